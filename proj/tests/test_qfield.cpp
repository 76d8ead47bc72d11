#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kleincm/cm_field.hpp"
#include "kleincm/qfield.hpp"

using namespace kleincm;

namespace {

const CMFieldSpec kSampleSpec{-1, 1, 2, 5};

QuartElem random_elem(const CMFieldSpec& s, std::mt19937& rng) {
    auto r = [&]() {
        Rat q(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 6) + 1);
        q.canonicalize();
        return q;
    };
    return {s, r(), r(), r(), r()};
}

}  // namespace

TEST_CASE("quadratic subfield arithmetic") {
    QuadElem a{make_rat(1, 2), make_rat(1, 2), 5};  // (1 + sqrt5)/2
    QuadElem b = a * a;
    CHECK(b.x == make_rat(3, 2));
    CHECK(b.y == make_rat(1, 2));  // (3 + sqrt5)/2
    CHECK(a.norm() == -1);
    CHECK_FALSE(a.is_totally_positive());
    CHECK(b.is_totally_positive());
    CHECK((a + a.galois()).x == 1);
    RBall e = a.embed(128);
    CHECK(e.mid().to_double() == doctest::Approx(1.618033988749895));
    CHECK(a.embed(128, true).mid().to_double() == doctest::Approx(-0.618033988749895));
}

TEST_CASE("embedding label composition") {
    CHECK(compose(EmbeddingLabel::sigma, EmbeddingLabel::sigma) == EmbeddingLabel::rho);
    CHECK(compose(EmbeddingLabel::rho, EmbeddingLabel::rho) == EmbeddingLabel::id);
    CHECK(compose(EmbeddingLabel::sigma, EmbeddingLabel::sigma3) == EmbeddingLabel::id);
}

TEST_CASE("quart_mul basic identities") {
    auto a = QuartElem::alpha(kSampleSpec);
    auto b = QuartElem::beta(kSampleSpec);
    CHECK(quart_mul(QuartElem::one(kSampleSpec), a) == a);
    // alpha^2 = A Delta + A B sqrt(Delta) = -5 - sqrt5
    CHECK(quart_mul(a, a) == QuartElem(kSampleSpec, -5, -1, 0, 0));
    // alpha beta = A C sqrt(Delta) = -2 sqrt5
    CHECK(quart_mul(a, b) == QuartElem(kSampleSpec, 0, -2, 0, 0));
}

TEST_CASE("mismatched field specs are rejected") {
    CMFieldSpec other{-3, 1, 2, 5};
    CHECK_THROWS_AS(quart_mul(QuartElem::alpha(kSampleSpec), QuartElem::alpha(other)),
                    std::invalid_argument);
}

TEST_CASE("galois action") {
    auto s = QuartElem::sqrt_delta(kSampleSpec);
    auto a = QuartElem::alpha(kSampleSpec);
    auto b = QuartElem::beta(kSampleSpec);
    CHECK(galois_apply(s, EmbeddingLabel::sigma) == -s);
    CHECK(galois_apply(a, EmbeddingLabel::rho) == -a);
    CHECK(galois_apply(a, EmbeddingLabel::sigma) == b);
    CHECK(galois_apply(b, EmbeddingLabel::sigma) == -a);

    std::mt19937 rng(3);
    for (int t = 0; t < 20; ++t) {
        QuartElem x = random_elem(kSampleSpec, rng);
        // sigma has order exactly 4, rho is an involution
        QuartElem y = x;
        for (int i = 0; i < 4; ++i) y = galois_apply(y, EmbeddingLabel::sigma);
        CHECK(y == x);
        CHECK(galois_apply(galois_apply(x, EmbeddingLabel::sigma), EmbeddingLabel::sigma) ==
              galois_apply(x, EmbeddingLabel::rho));
        CHECK(galois_apply(galois_apply(x, EmbeddingLabel::rho), EmbeddingLabel::rho) == x);
        // ring homomorphism
        QuartElem z = random_elem(kSampleSpec, rng);
        CHECK(galois_apply(quart_mul(x, z), EmbeddingLabel::sigma) ==
              quart_mul(galois_apply(x, EmbeddingLabel::sigma),
                        galois_apply(z, EmbeddingLabel::sigma)));
    }
}

TEST_CASE("trace values") {
    CHECK(trace(QuartElem::one(kSampleSpec)) == Rat(4));
    CHECK(trace(QuartElem::sqrt_delta(kSampleSpec)) == Rat(0));
    auto a = QuartElem::alpha(kSampleSpec);
    CHECK(trace(quart_mul(a, a)) == Rat(-20));
}

TEST_CASE("trace of integral basis products is an integer") {
    for (const CMFieldSpec& s : {CMFieldSpec{-1, 1, 2, 5}, CMFieldSpec{-37, 2, 1, 5},
                                 CMFieldSpec{-3, 2, 1, 5}, CMFieldSpec{-1, 1, 1, 2}}) {
        auto basis = integral_basis(s);
        for (const auto& x : basis)
            for (const auto& y : basis) {
                Rat t = trace(quart_mul(x, y));
                CHECK(t.get_den() == 1);
            }
    }
}

TEST_CASE("embedding conventions") {
    auto s = QuartElem::sqrt_delta(kSampleSpec);
    CBall v = embed(s, EmbeddingLabel::sigma, 128);
    CHECK(v.re().mid().to_double() == doctest::Approx(-2.2360679774997896).epsilon(1e-12));
    CHECK(v.im().abs_upper().to_double() < 1e-30);

    CBall a = embed(QuartElem::alpha(kSampleSpec), EmbeddingLabel::id, 128);
    CHECK(a.re().abs_upper().to_double() < 1e-30);
    CHECK(a.im().mid().to_double() == doctest::Approx(2.6899940478558293).epsilon(1e-12));

    CHECK_THROWS_AS(embed(QuartElem::alpha({3, 1, 2, 5}), EmbeddingLabel::id, 128),
                    std::domain_error);
    CHECK_THROWS_AS(embed(QuartElem::alpha(kSampleSpec), EmbeddingLabel::id, 32),
                    std::invalid_argument);
}

TEST_CASE("embedding is a ring homomorphism within tracked error") {
    std::mt19937 rng(9);
    for (const CMFieldSpec& s : {CMFieldSpec{-1, 1, 2, 5}, CMFieldSpec{-37, 2, 1, 5},
                                 CMFieldSpec{-1, 1, 1, 2}}) {
        for (int t = 0; t < 10; ++t) {
            QuartElem x = random_elem(s, rng);
            QuartElem y = random_elem(s, rng);
            for (auto g : {EmbeddingLabel::id, EmbeddingLabel::sigma, EmbeddingLabel::rho,
                           EmbeddingLabel::sigma3}) {
                CBall lhs = embed(quart_mul(x, y), g, 128);
                CBall rhs = embed(x, g, 128) * embed(y, g, 128);
                CHECK(CBall::overlap(lhs, rhs));
            }
        }
    }
}

TEST_CASE("trace equals the numerically summed embeddings") {
    std::mt19937 rng(13);
    for (int t = 0; t < 10; ++t) {
        QuartElem x = random_elem(kSampleSpec, rng);
        CBall sum = CBall::zero(128);
        for (auto g : {EmbeddingLabel::id, EmbeddingLabel::sigma, EmbeddingLabel::rho,
                       EmbeddingLabel::sigma3})
            sum = sum + embed(x, g, 128);
        CBall exact = CBall::of(trace(x), Rat(0), 128);
        CHECK(CBall::dist_upper(sum, exact).to_double() < 1e-30);
    }
}

TEST_CASE("embedding of the h=2 field integral basis") {
    // u(alpha_4) = (sqrt(-(5 - sqrt5)), -sqrt(-(5 + sqrt5))) forces
    // sigma: alpha -> beta, beta -> -alpha.
    auto b = QuartElem::beta(kSampleSpec);
    CBall b_id = embed(b, EmbeddingLabel::id, 128);
    CBall b_sig = embed(b, EmbeddingLabel::sigma, 128);
    CHECK(b_id.im().mid().to_double() == doctest::Approx(1.6625077511098137).epsilon(1e-12));
    CHECK(b_sig.im().mid().to_double() == doctest::Approx(-2.6899940478558293).epsilon(1e-12));
}
