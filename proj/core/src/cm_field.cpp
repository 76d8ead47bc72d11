#include "kleincm/cm_field.hpp"

#include <numeric>
#include <stdexcept>

namespace kleincm {

namespace {

long mod4(long x) { return ((x % 4) + 4) % 4; }

}  // namespace

std::string to_string(CaseLabel c) {
    switch (c) {
        case CaseLabel::i: return "i";
        case CaseLabel::ii: return "ii";
        case CaseLabel::iii: return "iii";
        case CaseLabel::iv: return "iv";
        case CaseLabel::v: return "v";
    }
    return "?";
}

void validate_spec(const CMFieldSpec& spec, bool require_cm) {
    if (spec.A % 2 == 0) throw std::invalid_argument("spec: A must be odd");
    if (!is_squarefree(Int(spec.A))) throw std::invalid_argument("spec: A must be squarefree");
    if (spec.B <= 0 || spec.C <= 0) throw std::invalid_argument("spec: B, C must be positive");
    if (spec.Delta != spec.B * spec.B + spec.C * spec.C)
        throw std::invalid_argument("spec: Delta must equal B^2 + C^2");
    if (!is_squarefree(Int(spec.Delta)))
        throw std::invalid_argument("spec: Delta must be squarefree");
    if (std::gcd(std::abs(spec.A), spec.Delta) != 1)
        throw std::invalid_argument("spec: gcd(A, Delta) must be 1");
    if (require_cm && spec.A >= 0)
        throw std::invalid_argument("spec: A must be negative (CM field)");
}

CaseLabel classify(const CMFieldSpec& spec) {
    validate_spec(spec, /*require_cm=*/false);
    if (spec.Delta % 2 == 0) return CaseLabel::i;
    if (spec.B % 2 != 0) return CaseLabel::ii;
    if (mod4(spec.A + spec.B) == 3) return CaseLabel::iii;
    if (mod4(spec.A - spec.C) == 0) return CaseLabel::iv;
    if (mod4(spec.A + spec.C) == 0) return CaseLabel::v;
    throw std::logic_error("classify: no case matched");
}

FieldInvariants field_invariants(const CMFieldSpec& spec) {
    CaseLabel c = classify(spec);
    long l = 0, e = 0;
    switch (c) {
        case CaseLabel::i: l = 3; e = 8; break;
        case CaseLabel::ii: l = 3; e = 6; break;
        case CaseLabel::iii: l = 2; e = 4; break;
        case CaseLabel::iv:
        case CaseLabel::v: l = 0; e = 0; break;
    }
    Int D(spec.Delta), A(spec.A);
    FieldInvariants out;
    out.conductor = int_pow(Int(2), static_cast<unsigned long>(l)) * D * abs(A);
    out.discriminant = int_pow(Int(2), static_cast<unsigned long>(e)) * D * D * D * A * A;
    return out;
}

std::array<QuartElem, 4> integral_basis(const CMFieldSpec& spec) {
    CaseLabel c = classify(spec);
    const Rat h = make_rat(1, 2);
    const Rat q = make_rat(1, 4);
    QuartElem one = QuartElem::one(spec);
    QuartElem s = QuartElem::sqrt_delta(spec);
    QuartElem a = QuartElem::alpha(spec);
    QuartElem b = QuartElem::beta(spec);
    QuartElem half_1s = (one + s).scale(h);  // (1 + sqrt(Delta))/2
    switch (c) {
        case CaseLabel::i:
            return {one, s, a, b};
        case CaseLabel::ii:
            return {one, half_1s, a, b};
        case CaseLabel::iii:
            return {one, half_1s, (a + b).scale(h), (a - b).scale(h)};
        case CaseLabel::iv:
            return {one, half_1s, (one + s + a + b).scale(q), (one - s + a - b).scale(q)};
        case CaseLabel::v:
            return {one, half_1s, (one + s + a - b).scale(q), (one - s + a + b).scale(q)};
    }
    throw std::logic_error("integral_basis: bad case");
}

PolarizationSpec zeta_principal(const CMFieldSpec& spec) {
    validate_spec(spec, /*require_cm=*/true);
    if (spec.Delta != 5)
        throw std::domain_error("zeta_principal: only Delta = 5 is supported");
    CaseLabel c = classify(spec);
    long mult = 0;
    switch (c) {
        case CaseLabel::ii: mult = 4; break;
        case CaseLabel::iii: mult = 2; break;
        case CaseLabel::iv:
        case CaseLabel::v: mult = 1; break;
        case CaseLabel::i:
            throw std::domain_error("zeta_principal: case (i) cannot occur for Delta = 5");
    }
    Rat kappa(-mult * spec.Delta * spec.A);
    PolarizationSpec out{QuartElem::alpha(spec).scale(Rat(1) / kappa), kappa};
    return out;
}

IntSkewMatrix4 riemann_gram(const std::array<QuartElem, 4>& basis, const PolarizationSpec& pol) {
    IntSkewMatrix4 m;
    for (int j = 0; j < 4; ++j) {
        for (int k = 0; k < 4; ++k) {
            Rat e = trace(quart_mul(quart_mul(pol.zeta, basis[static_cast<size_t>(j)]),
                                    galois_apply(basis[static_cast<size_t>(k)], EmbeddingLabel::rho)));
            if (e.get_den() != 1)
                throw std::domain_error(
                    "riemann_gram: non-integer entry, zeta does not give an integral Riemann "
                    "form on this lattice");
            m[static_cast<size_t>(j)][static_cast<size_t>(k)] = e.get_num();
        }
    }
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
            if (m[static_cast<size_t>(j)][static_cast<size_t>(k)] +
                    m[static_cast<size_t>(k)][static_cast<size_t>(j)] !=
                0)
                throw std::logic_error("riemann_gram: matrix not skew-symmetric");
    return m;
}

std::array<std::array<Rat, 4>, 4> gram_closed_form(const CMFieldSpec& spec, const Rat& kappa) {
    CaseLabel c = classify(spec);
    const Rat B(spec.B), C(spec.C);
    Rat pre;  // -(mult * Delta * A) / kappa
    Rat z(0);
    std::array<std::array<Rat, 4>, 4> t;
    switch (c) {
        case CaseLabel::i:
            pre = Rat(-4 * spec.Delta * spec.A) / kappa;
            t = {{{z, z, Rat(1), z}, {z, z, B, C}, {Rat(-1), -B, z, z}, {z, -C, z, z}}};
            break;
        case CaseLabel::ii:
            pre = Rat(-2 * spec.Delta * spec.A) / kappa;
            t = {{{z, z, Rat(2), z},
                  {z, z, Rat(1) + B, C},
                  {Rat(-2), -(Rat(1) + B), z, z},
                  {z, -C, z, z}}};
            break;
        case CaseLabel::iii:
            pre = Rat(-spec.Delta * spec.A) / kappa;
            t = {{{z, z, Rat(2), Rat(2)},
                  {z, z, Rat(1) + B + C, Rat(1) + B - C},
                  {Rat(-2), -(Rat(1) + B + C), z, z},
                  {Rat(-2), -(Rat(1) + B - C), z, z}}};
            break;
        case CaseLabel::iv:
            pre = Rat(-spec.Delta * spec.A) / kappa;
            t = {{{z, z, Rat(1), Rat(1)},
                  {z, z, (Rat(1) + B + C) / 2, (Rat(1) + B - C) / 2},
                  {Rat(-1), -(Rat(1) + B + C) / 2, z, B / 2},
                  {Rat(-1), -(Rat(1) + B - C) / 2, -B / 2, z}}};
            break;
        case CaseLabel::v:
            pre = Rat(-spec.Delta * spec.A) / kappa;
            t = {{{z, z, Rat(1), Rat(1)},
                  {z, z, (Rat(1) + B - C) / 2, (Rat(1) + B + C) / 2},
                  {Rat(-1), -(Rat(1) + B - C) / 2, z, B / 2},
                  {Rat(-1), -(Rat(1) + B + C) / 2, -B / 2, z}}};
            break;
    }
    for (auto& row : t)
        for (auto& e : row) e *= pre;
    return t;
}

Int pfaffian(const IntSkewMatrix4& m) {
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
            if (m[static_cast<size_t>(j)][static_cast<size_t>(k)] +
                    m[static_cast<size_t>(k)][static_cast<size_t>(j)] !=
                0)
                throw std::invalid_argument("pfaffian: matrix not skew-symmetric");
    // pf(M) = m01 m23 - m02 m13 + m03 m12; det(M) = pf(M)^2.
    Int pf = m[0][1] * m[2][3] - m[0][2] * m[1][3] + m[0][3] * m[1][2];
    return abs(pf);
}

}  // namespace kleincm
