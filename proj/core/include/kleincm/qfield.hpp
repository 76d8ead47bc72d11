#pragma once

#include <array>
#include <string>

#include "kleincm/ball.hpp"
#include "kleincm/field_spec.hpp"
#include "kleincm/rational.hpp"

namespace kleincm {

/// Element x + y*sqrt(Delta) of the real quadratic subfield.
struct QuadElem {
    Rat x;
    Rat y;
    long Delta = 5;

    friend QuadElem operator+(const QuadElem& a, const QuadElem& b);
    friend QuadElem operator-(const QuadElem& a, const QuadElem& b);
    friend QuadElem operator*(const QuadElem& a, const QuadElem& b);
    QuadElem galois() const { return {x, -y, Delta}; }
    Rat norm() const { return x * x - Rat(Delta) * y * y; }
    bool is_totally_positive() const;
    /// Real embedding; conjugate = true sends sqrt(Delta) to its negative.
    RBall embed(mpfr_prec_t prec, bool conjugate = false) const;
};

/// Galois group of the cyclic quartic field, Z/4 generated by sigma.
/// sigma: sqrt(Delta) -> -sqrt(Delta), alpha -> beta, beta -> -alpha;
/// rho = sigma^2 is complex conjugation.
enum class EmbeddingLabel { id, sigma, rho, sigma3 };

EmbeddingLabel compose(EmbeddingLabel g, EmbeddingLabel h);

/// Exact element of K in the basis {1, sqrt(Delta), alpha, beta} with
/// alpha = sqrt(A(Delta + B sqrt(Delta))), beta = sqrt(A(Delta - B sqrt(Delta))).
///
/// Closure rules (fixed embedding convention, alpha and beta both on the
/// positive imaginary branch, so alpha*beta = A*C*sqrt(Delta)):
///   sqrt(D)^2 = Delta,   sqrt(D)*alpha = B*alpha + C*beta,
///   sqrt(D)*beta = C*alpha - B*beta,
///   alpha^2 = A*Delta + A*B*sqrt(D),  beta^2 = A*Delta - A*B*sqrt(D).
class QuartElem {
  public:
    QuartElem() = default;
    QuartElem(CMFieldSpec spec, Rat c0, Rat c1, Rat c2, Rat c3)
        : spec_(spec), c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {}

    static QuartElem one(const CMFieldSpec& s) { return {s, 1, 0, 0, 0}; }
    static QuartElem sqrt_delta(const CMFieldSpec& s) { return {s, 0, 1, 0, 0}; }
    static QuartElem alpha(const CMFieldSpec& s) { return {s, 0, 0, 1, 0}; }
    static QuartElem beta(const CMFieldSpec& s) { return {s, 0, 0, 0, 1}; }

    const CMFieldSpec& spec() const { return spec_; }
    const Rat& coeff(int i) const { return c_[static_cast<size_t>(i)]; }
    const std::array<Rat, 4>& coeffs() const { return c_; }
    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

    friend bool operator==(const QuartElem& a, const QuartElem& b) {
        return a.spec_ == b.spec_ && a.c_ == b.c_;
    }
    friend QuartElem operator+(const QuartElem& a, const QuartElem& b);
    friend QuartElem operator-(const QuartElem& a, const QuartElem& b);
    QuartElem operator-() const { return {spec_, -c_[0], -c_[1], -c_[2], -c_[3]}; }
    QuartElem scale(const Rat& q) const {
        return {spec_, c_[0] * q, c_[1] * q, c_[2] * q, c_[3] * q};
    }

    std::string str() const;

  private:
    CMFieldSpec spec_;
    std::array<Rat, 4> c_{};
};

/// Exact product in the {1, sqrt(Delta), alpha, beta} basis.
QuartElem quart_mul(const QuartElem& x, const QuartElem& y);

/// Apply a Galois element; Q-linear ring homomorphism.
QuartElem galois_apply(const QuartElem& x, EmbeddingLabel g);

/// Tr_{K/Q}(x), the sum over the four Galois images.
Rat trace(const QuartElem& x);

/// Complex embedding with tracked error. The identity embedding sends alpha
/// to +i sqrt(|A|(Delta + B sqrt(Delta))) (positive imaginary part);
/// requires A < 0.
CBall embed(const QuartElem& x, EmbeddingLabel g, mpfr_prec_t prec);

}  // namespace kleincm
