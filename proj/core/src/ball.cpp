#include "kleincm/ball.hpp"

namespace kleincm {

Real RBall::lower() const {
    Real r(mid_.prec());
    mpfr_sub(r.get(), mid_.get(), rad_.get(), MPFR_RNDD);
    return r;
}

Real RBall::upper() const {
    Real r(mid_.prec());
    mpfr_add(r.get(), mid_.get(), rad_.get(), MPFR_RNDU);
    return r;
}

bool RBall::contains_zero() const {
    if (mid_.is_zero()) return true;
    Mag a = Mag::upper_abs(mid_);
    return !(rad_ < a) || mpfr_cmp(rad_.get(), a.get()) == 0;
}

RBall operator+(const RBall& a, const RBall& b) {
    Real m = a.mid_ + b.mid_;
    Mag r = a.rad_ + b.rad_ + Mag::ulp(m);
    return RBall(std::move(m), std::move(r));
}

RBall operator-(const RBall& a, const RBall& b) {
    Real m = a.mid_ - b.mid_;
    Mag r = a.rad_ + b.rad_ + Mag::ulp(m);
    return RBall(std::move(m), std::move(r));
}

RBall operator*(const RBall& a, const RBall& b) {
    Real m = a.mid_ * b.mid_;
    Mag r = Mag::upper_abs(a.mid_) * b.rad_ + Mag::upper_abs(b.mid_) * a.rad_ +
            a.rad_ * b.rad_ + Mag::ulp(m);
    return RBall(std::move(m), std::move(r));
}

RBall operator*(const RBall& a, long b) {
    Real m(a.prec());
    mpfr_mul_si(m.get(), a.mid_.get(), b, MPFR_RNDN);
    Mag r = a.rad_ * Mag::upper_abs(Real::of(b, 64)) + Mag::ulp(m);
    return RBall(std::move(m), std::move(r));
}

RBall RBall::mul_rat(const Rat& q) const {
    Real qr = Real::of(q, prec());
    Real m = mid_ * qr;
    Mag r = rad_ * (Mag::upper_abs(qr) + Mag::ulp(qr)) + Mag::ulp(m) +
            Mag::upper_abs(mid_) * Mag::ulp(qr);
    return RBall(std::move(m), std::move(r));
}

RBall operator/(const RBall& a, const RBall& b) {
    // x/y - m1/m2 = (m2 e1 - m1 e2) / (m2 y); |y| >= L = |m2| - r2 > 0.
    Real babs = b.mid_.abs();
    Real L(b.prec());
    mpfr_sub(L.get(), babs.get(), b.rad_.get(), MPFR_RNDD);
    if (L.sign() <= 0) throw ball_error("RBall division by a ball containing zero");
    Real m = a.mid_ / b.mid_;
    Mag num = Mag::upper_abs(b.mid_) * a.rad_ + Mag::upper_abs(a.mid_) * b.rad_;
    Real den(b.prec());
    mpfr_mul(den.get(), babs.get(), L.get(), MPFR_RNDD);
    Mag r = Mag::div_upper(num, den) + Mag::ulp(m);
    return RBall(std::move(m), std::move(r));
}

RBall RBall::sqrt_pos() const {
    Real L(prec());
    mpfr_sub(L.get(), mid_.get(), rad_.get(), MPFR_RNDD);
    if (L.sign() <= 0) throw ball_error("RBall::sqrt_pos: ball not strictly positive");
    Real m = mid_.sqrt();
    Real sL(prec());
    mpfr_sqrt(sL.get(), L.get(), MPFR_RNDD);
    mpfr_mul_ui(sL.get(), sL.get(), 2, MPFR_RNDD);
    Mag r = Mag::div_upper(rad_, sL) + Mag::ulp(m);
    return RBall(std::move(m), std::move(r));
}

RBall RBall::exp() const {
    Real m = exp_real(mid_);
    // |e^{m+e} - e^m| <= e^m (e^{|e|} - 1)
    Mag r = (Mag::upper_abs(m) + Mag::ulp(m)) * rad_.expm1_upper() + Mag::ulp(m);
    return RBall(std::move(m), std::move(r));
}

std::string RBall::str() const {
    return mid_.str() + " +/- " + (rad_.is_zero() ? "0" : std::to_string(rad_.to_double()));
}

CBall operator/(const CBall& a, const CBall& b) {
    RBall d = b.re() * b.re() + b.im() * b.im();
    RBall re = (a.re() * b.re() + a.im() * b.im()) / d;
    RBall im = (a.im() * b.re() - a.re() * b.im()) / d;
    return CBall(std::move(re), std::move(im));
}

CBall CBall::pow(unsigned e) const {
    CBall acc = CBall::of(Rat(1), Rat(0), prec());
    CBall base = *this;
    while (e > 0) {
        if (e & 1u) acc = acc * base;
        base = base * base;
        e >>= 1u;
    }
    return acc;
}

Real CBall::abs_lower() const {
    // |z| >= max(|re|,|im|) on midpoints, minus the radii.
    Real lo(prec());
    Real rabs = re_.mid().abs();
    Real iabs = im_.mid().abs();
    mpfr_max(lo.get(), rabs.get(), iabs.get(), MPFR_RNDD);
    Mag r = rad_upper();
    mpfr_sub(lo.get(), lo.get(), r.get(), MPFR_RNDD);
    if (lo.sign() < 0) mpfr_set_zero(lo.get(), 1);
    return lo;
}

CBall expi_pi(const CBall& q) {
    // exp(pi i (x+iy)) = e^{-pi y} (cos pi x + i sin pi x)
    mpfr_prec_t p = q.prec();
    Real pi = Real::pi(p + 8);

    Real mpy(p);
    mpfr_mul(mpy.get(), pi.get(), q.im().mid().get(), MPFR_RNDN);
    mpfr_neg(mpy.get(), mpy.get(), MPFR_RNDN);
    Mag pi_up = Mag::upper_abs(pi) + Mag::ulp(pi);
    RBall mag_part = RBall(mpy, q.im().rad() * pi_up + Mag::ulp(mpy)).exp();

    // Reduce x mod 2 before multiplying by pi, so the sin/cos argument stays
    // small and no significance is lost for large x.
    Real xr(p + 8);
    Real two = Real::of(2, 32);
    mpfr_fmod(xr.get(), q.re().mid().get(), two.get(), MPFR_RNDN);
    Real t(p + 8);
    mpfr_mul(t.get(), pi.get(), xr.get(), MPFR_RNDN);
    Real c(p), s(p);
    mpfr_sin_cos(s.get(), c.get(), t.get(), MPFR_RNDN);
    Mag trig_err = q.re().rad() * pi_up + Mag::pow2(4 - static_cast<long>(p));
    RBall cosb(c, trig_err + Mag::ulp(c));
    RBall sinb(s, trig_err + Mag::ulp(s));
    return CBall(mag_part * cosb, mag_part * sinb);
}

}  // namespace kleincm
