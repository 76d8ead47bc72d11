#pragma once

#include <stdexcept>
#include <string>

#include "kleincm/real.hpp"

namespace kleincm {

/// Thrown when a ball operation cannot exclude a singularity (division by a
/// ball containing zero, square root of a ball touching the negative axis).
struct ball_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Nonnegative magnitude used as error radius. Low precision, every
/// operation rounds up, so magnitudes are always safe over-estimates.
class Mag {
  public:
    static constexpr mpfr_prec_t kPrec = 32;

    Mag() { mpfr_init2(m_, kPrec); mpfr_set_zero(m_, 1); }
    Mag(const Mag& o) { mpfr_init2(m_, kPrec); mpfr_set(m_, o.m_, MPFR_RNDU); }
    Mag& operator=(const Mag& o) {
        if (this != &o) mpfr_set(m_, o.m_, MPFR_RNDU);
        return *this;
    }
    ~Mag() { mpfr_clear(m_); }

    static Mag zero() { return Mag(); }
    static Mag pow2(long e) {
        Mag r;
        mpfr_set_ui_2exp(r.m_, 1, e, MPFR_RNDU);
        return r;
    }
    /// Upper bound of |x|.
    static Mag upper_abs(const Real& x) {
        Mag r;
        mpfr_abs(r.m_, x.get(), MPFR_RNDU);
        return r;
    }
    /// Upper bound of the rounding error of a value computed at precision
    /// `prec` whose rounded result is `x`: one ulp, 2^{exp(x)-prec+1}.
    static Mag ulp(const Real& x) {
        if (x.is_zero()) return Mag();
        return pow2(x.exponent() - static_cast<long>(x.prec()) + 1);
    }

    bool is_zero() const { return mpfr_zero_p(m_); }
    double to_double() const { return mpfr_get_d(m_, MPFR_RNDU); }
    Real to_real(mpfr_prec_t prec = kPrec) const {
        Real r(prec);
        mpfr_set(r.get(), m_, MPFR_RNDU);
        return r;
    }
    long exponent() const { return is_zero() ? -(1L << 30) : mpfr_get_exp(m_); }

    friend Mag operator+(const Mag& a, const Mag& b) {
        Mag r;
        mpfr_add(r.m_, a.m_, b.m_, MPFR_RNDU);
        return r;
    }
    friend Mag operator*(const Mag& a, const Mag& b) {
        Mag r;
        mpfr_mul(r.m_, a.m_, b.m_, MPFR_RNDU);
        return r;
    }
    Mag& operator+=(const Mag& o) {
        mpfr_add(m_, m_, o.m_, MPFR_RNDU);
        return *this;
    }
    friend Mag max(const Mag& a, const Mag& b) { return mpfr_cmp(a.m_, b.m_) >= 0 ? a : b; }
    friend bool operator<(const Mag& a, const Mag& b) { return mpfr_cmp(a.m_, b.m_) < 0; }
    friend bool operator<(const Mag& a, const Real& b) { return mpfr_cmp(a.m_, b.get()) < 0; }

    /// Upper bound of a/b given b_low a lower bound of the denominator.
    static Mag div_upper(const Mag& a, const Real& b_low) {
        if (b_low.sign() <= 0) throw ball_error("Mag::div_upper: nonpositive denominator bound");
        Mag r;
        mpfr_div(r.m_, a.m_, b_low.get(), MPFR_RNDU);
        return r;
    }
    /// Upper bound of e^x - 1 for x = this.
    Mag expm1_upper() const {
        Mag r;
        mpfr_expm1(r.m_, m_, MPFR_RNDU);
        return r;
    }

    mpfr_srcptr get() const { return m_; }

  private:
    mpfr_t m_;
};

/// Real ball: midpoint with rigorously propagated error radius.
class RBall {
  public:
    RBall() : mid_(53), rad_() {}
    explicit RBall(Real mid, Mag rad = Mag()) : mid_(std::move(mid)), rad_(std::move(rad)) {}

    static RBall of(long x, mpfr_prec_t prec) { return RBall(Real::of(x, prec)); }
    static RBall of(const Int& x, mpfr_prec_t prec) {
        Real m = Real::of(x, prec);
        return RBall(m, Mag::ulp(m));
    }
    static RBall of(const Rat& x, mpfr_prec_t prec) {
        Real m = Real::of(x, prec);
        return RBall(m, Mag::ulp(m));
    }
    static RBall zero(mpfr_prec_t prec) { return RBall(Real(prec)); }

    const Real& mid() const { return mid_; }
    const Mag& rad() const { return rad_; }
    mpfr_prec_t prec() const { return mid_.prec(); }

    /// Same ball with the midpoint stored at precision p (lossless when
    /// p >= prec(), else the rounding is absorbed into the radius).
    RBall at_prec(mpfr_prec_t p) const {
        Real m(p);
        mpfr_set(m.get(), mid_.get(), MPFR_RNDN);
        Mag r = rad_;
        if (p < mid_.prec()) r += Mag::ulp(m);
        return RBall(std::move(m), std::move(r));
    }

    /// Lower bound of the ball (every element is >= this).
    Real lower() const;
    /// Upper bound of the ball.
    Real upper() const;
    Mag abs_upper() const { return Mag::upper_abs(mid_) + rad_; }
    bool contains_zero() const;

    RBall operator-() const { return RBall(-mid_, rad_); }
    friend RBall operator+(const RBall& a, const RBall& b);
    friend RBall operator-(const RBall& a, const RBall& b);
    friend RBall operator*(const RBall& a, const RBall& b);
    friend RBall operator/(const RBall& a, const RBall& b);
    friend RBall operator*(const RBall& a, long b);

    RBall mul_rat(const Rat& q) const;

    /// Square root; the ball must be strictly positive.
    RBall sqrt_pos() const;
    RBall exp() const;

    std::string str() const;

  private:
    Real mid_;
    Mag rad_;
};

/// Complex ball with independent radii on the two components.
class CBall {
  public:
    CBall() = default;
    CBall(RBall re, RBall im) : re_(std::move(re)), im_(std::move(im)) {}

    static CBall of(const Rat& re, const Rat& im, mpfr_prec_t prec) {
        return CBall(RBall::of(re, prec), RBall::of(im, prec));
    }
    static CBall real(RBall re) {
        mpfr_prec_t p = re.prec();
        return CBall(std::move(re), RBall::zero(p));
    }
    static CBall zero(mpfr_prec_t prec) { return CBall(RBall::zero(prec), RBall::zero(prec)); }

    const RBall& re() const { return re_; }
    const RBall& im() const { return im_; }
    mpfr_prec_t prec() const { return std::max(re_.prec(), im_.prec()); }
    CBall at_prec(mpfr_prec_t p) const { return CBall(re_.at_prec(p), im_.at_prec(p)); }

    CBall conj() const { return CBall(re_, -im_); }
    CBall operator-() const { return CBall(-re_, -im_); }

    friend CBall operator+(const CBall& a, const CBall& b) {
        return CBall(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend CBall operator-(const CBall& a, const CBall& b) {
        return CBall(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend CBall operator*(const CBall& a, const CBall& b) {
        return CBall(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend CBall operator/(const CBall& a, const CBall& b);
    friend CBall operator*(const CBall& a, long b) { return CBall(a.re_ * b, a.im_ * b); }

    CBall mul_rat(const Rat& q) const { return CBall(re_.mul_rat(q), im_.mul_rat(q)); }
    CBall mul_i() const { return CBall(-im_, re_); }

    CBall pow(unsigned e) const;

    /// Upper bound of the modulus (via the l1 norm, coarse but safe).
    Mag abs_upper() const { return re_.abs_upper() + im_.abs_upper(); }
    bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
    /// Whether the two balls intersect (their difference contains zero).
    static bool overlap(const CBall& a, const CBall& b) { return (a - b).contains_zero(); }
    /// Upper bound of |a - b|.
    static Mag dist_upper(const CBall& a, const CBall& b) { return (a - b).abs_upper(); }
    Mag rad_upper() const { return re_.rad() + im_.rad(); }
    /// Lower bound of the modulus; zero if the ball may contain zero.
    Real abs_lower() const;

    std::string str() const { return re_.str() + " + " + im_.str() + "*I"; }

  private:
    RBall re_;
    RBall im_;
};

/// exp(pi*i*q) for complex q, the theta-series building block.
CBall expi_pi(const CBall& q);

/// sqrt of a positive real quantity as a complex ball on the imaginary axis
/// is composed by callers from RBall::sqrt_pos and CBall::mul_i.

}  // namespace kleincm
