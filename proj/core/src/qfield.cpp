#include "kleincm/qfield.hpp"

#include <sstream>
#include <stdexcept>

namespace kleincm {

QuadElem operator+(const QuadElem& a, const QuadElem& b) {
    return {a.x + b.x, a.y + b.y, a.Delta};
}

QuadElem operator-(const QuadElem& a, const QuadElem& b) {
    return {a.x - b.x, a.y - b.y, a.Delta};
}

QuadElem operator*(const QuadElem& a, const QuadElem& b) {
    return {a.x * b.x + Rat(a.Delta) * a.y * b.y, a.x * b.y + a.y * b.x, a.Delta};
}

bool QuadElem::is_totally_positive() const {
    // x + y sqrt(D) > 0 and x - y sqrt(D) > 0  <=>  x > 0 and x^2 > D y^2.
    return x > 0 && x * x > Rat(Delta) * y * y;
}

RBall QuadElem::embed(mpfr_prec_t prec, bool conjugate) const {
    RBall sq = RBall::of(Rat(Delta), prec).sqrt_pos();
    if (conjugate) sq = -sq;
    return RBall::of(x, prec) + sq.mul_rat(y);
}

EmbeddingLabel compose(EmbeddingLabel g, EmbeddingLabel h) {
    int a = static_cast<int>(g), b = static_cast<int>(h);
    return static_cast<EmbeddingLabel>((a + b) % 4);
}

QuartElem operator+(const QuartElem& a, const QuartElem& b) {
    if (a.spec_ != b.spec_) throw std::invalid_argument("QuartElem: mismatched field specs");
    return {a.spec_, a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2], a.c_[3] + b.c_[3]};
}

QuartElem operator-(const QuartElem& a, const QuartElem& b) {
    if (a.spec_ != b.spec_) throw std::invalid_argument("QuartElem: mismatched field specs");
    return {a.spec_, a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2], a.c_[3] - b.c_[3]};
}

QuartElem quart_mul(const QuartElem& x, const QuartElem& y) {
    if (x.spec() != y.spec()) throw std::invalid_argument("quart_mul: mismatched field specs");
    const CMFieldSpec& s = x.spec();
    const Rat A(s.A), B(s.B), C(s.C), D(s.Delta);
    const auto& a = x.coeffs();
    const auto& b = y.coeffs();

    Rat r0 = a[0] * b[0] + D * a[1] * b[1] + A * D * (a[2] * b[2] + a[3] * b[3]);
    Rat r1 = a[0] * b[1] + a[1] * b[0] + A * B * (a[2] * b[2] - a[3] * b[3]) +
             A * C * (a[2] * b[3] + a[3] * b[2]);
    Rat r2 = a[0] * b[2] + a[2] * b[0] + B * (a[1] * b[2] + a[2] * b[1]) +
             C * (a[1] * b[3] + a[3] * b[1]);
    Rat r3 = a[0] * b[3] + a[3] * b[0] + C * (a[1] * b[2] + a[2] * b[1]) -
             B * (a[1] * b[3] + a[3] * b[1]);
    return {s, std::move(r0), std::move(r1), std::move(r2), std::move(r3)};
}

QuartElem galois_apply(const QuartElem& x, EmbeddingLabel g) {
    const auto& c = x.coeffs();
    switch (g) {
        case EmbeddingLabel::id:
            return x;
        case EmbeddingLabel::sigma:  // s -> -s, alpha -> beta, beta -> -alpha
            return {x.spec(), c[0], -c[1], -c[3], c[2]};
        case EmbeddingLabel::rho:    // s -> s, alpha -> -alpha, beta -> -beta
            return {x.spec(), c[0], c[1], -c[2], -c[3]};
        case EmbeddingLabel::sigma3:
            return {x.spec(), c[0], -c[1], c[3], -c[2]};
    }
    throw std::logic_error("galois_apply: bad label");
}

Rat trace(const QuartElem& x) {
    // The non-rational coordinates cancel across the four conjugates, so the
    // trace is the sum of the constant coordinates (= 4*c0; summed anyway).
    Rat sum = 0;
    for (auto g : {EmbeddingLabel::id, EmbeddingLabel::sigma, EmbeddingLabel::rho,
                   EmbeddingLabel::sigma3}) {
        sum += galois_apply(x, g).coeff(0);
    }
    return sum;
}

CBall embed(const QuartElem& x, EmbeddingLabel g, mpfr_prec_t prec) {
    const CMFieldSpec& s = x.spec();
    if (s.A >= 0) throw std::domain_error("embed: A >= 0, not a CM field");
    if (prec < 53) throw std::invalid_argument("embed: prec must be >= 53");

    QuartElem y = galois_apply(x, g);
    const auto& c = y.coeffs();

    RBall sq = RBall::of(Rat(s.Delta), prec).sqrt_pos();
    // alpha = i sqrt(|A| (Delta + B sqrt(Delta))), beta likewise with -B.
    Rat absA(-s.A);
    RBall rad_a = (RBall::of(Rat(s.Delta), prec) + sq.mul_rat(Rat(s.B))).mul_rat(absA).sqrt_pos();
    RBall rad_b = (RBall::of(Rat(s.Delta), prec) - sq.mul_rat(Rat(s.B))).mul_rat(absA).sqrt_pos();

    RBall re = RBall::of(c[0], prec) + sq.mul_rat(c[1]);
    RBall im = rad_a.mul_rat(c[2]) + rad_b.mul_rat(c[3]);
    return CBall(std::move(re), std::move(im));
}

std::string QuartElem::str() const {
    std::ostringstream os;
    os << c_[0].get_str() << " + " << c_[1].get_str() << "*s + " << c_[2].get_str() << "*a + "
       << c_[3].get_str() << "*b";
    return os.str();
}

}  // namespace kleincm
