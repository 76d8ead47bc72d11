#include "kleincm/theta.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace kleincm {

const std::array<ThetaChar, 10>& char_table() {
    static const std::array<ThetaChar, 10> table = {{
        {{0, 0}, {0, 0}},  // 0
        {{1, 1}, {0, 0}},  // 1
        {{0, 0}, {1, 1}},  // 2
        {{1, 1}, {1, 1}},  // 3
        {{0, 1}, {0, 0}},  // 4
        {{1, 0}, {0, 0}},  // 5
        {{0, 0}, {0, 1}},  // 6
        {{1, 0}, {0, 1}},  // 7
        {{0, 0}, {1, 0}},  // 8
        {{0, 1}, {1, 0}},  // 9
    }};
    return table;
}

namespace {

constexpr long kRadiusCap = 4000;

/// Lower bound of the smallest eigenvalue of Im(Omega).
Real im_lambda_min(const PeriodMatrix& om) {
    RBall y1 = om.tau1.im(), y2 = om.tau2.im(), y3 = om.tau3.im();
    RBall tr = y1 + y3;
    RBall det = y1 * y3 - y2 * y2;
    RBall disc = tr * tr - det * 4;
    if (disc.lower().sign() < 0) disc = RBall(disc.upper());  // clamp, disc >= 0 in exact arith
    RBall lam = (tr - disc.sqrt_pos()) * RBall::of(make_rat(1, 2), tr.prec());
    return lam.lower();
}

/// Upper bound of sum_{k >= R} 16 (k+2) exp(-pi lam k^2), computed in a
/// 96-bit ball so the bound stays rigorous.
Mag tail_bound(const Real& lam_low, long R, mpfr_prec_t prec) {
    RBall lam(lam_low);  // exact lower bound as midpoint, radius 0
    RBall pi_b(Real::pi(96), Mag::pow2(-90));
    Mag total;
    Real cutoff = Real::pow2(-static_cast<long>(prec) - 40, 64);
    long k = R;
    for (; k < R + 400; ++k) {
        RBall t = (-(pi_b * lam * (k * k))).exp() * (16 * (k + 2));
        total += Mag::upper_abs(t.upper());
        if (t.upper() < cutoff) break;
    }
    // Geometric remainder: terms beyond k decay by at least exp(-2 pi lam k).
    RBall ratio = (-(pi_b * lam * (2 * k))).exp();
    Real denom_low = (RBall::of(1L, 96) - ratio).lower();
    if (denom_low.sign() <= 0) return Mag::pow2(1 << 20);  // effectively useless bound
    RBall last = (-(pi_b * lam * (k * k))).exp() * (16 * (k + 2));
    total += Mag::div_upper(Mag::upper_abs(last.upper()), denom_low);
    return total;
}

}  // namespace

CBall theta_const(const PeriodMatrix& om, const ThetaChar& ch, mpfr_prec_t prec) {
    if (!ch.is_even()) throw std::invalid_argument("theta_const: odd characteristic");
    Real lam = im_lambda_min(om);
    if (lam.sign() <= 0)
        throw std::domain_error("theta_const: Im(Omega) not positive definite");
    // Guard bits keep the accumulated term rounding well below 2^{-prec}.
    mpfr_prec_t wprec = prec + 32;
    PeriodMatrix omw{om.tau1.at_prec(wprec), om.tau2.at_prec(wprec), om.tau3.at_prec(wprec)};

    // Smallest R with the Gaussian tail below 2^{-prec-4}.
    double lam_d = lam.to_double();
    double target = -(static_cast<double>(prec) + 6.0) * std::log(2.0);
    long R = 1;
    while (R < kRadiusCap) {
        double logterm = -M_PI * lam_d * static_cast<double>(R) * static_cast<double>(R) +
                         std::log(16.0 * static_cast<double>(R + 2) * 8.0);
        if (logterm < target) break;
        ++R;
    }
    if (R >= kRadiusCap)
        throw std::domain_error(
            "theta_const: truncation radius exceeds cap (Im too small; reduce Omega first)");
    Mag tail = tail_bound(lam, R, prec);

    // Sum over half-integers x = g + a/2 with |x|_inf <= R + 1/2; n = 2x.
    const Rat quarter = make_rat(1, 4);
    CBall sum = CBall::zero(wprec);
    long n1lo = -2 * R - 1 + ((ch.a[0] == 0) ? 1 : 0);
    long n2lo = -2 * R - 1 + ((ch.a[1] == 0) ? 1 : 0);
    for (long n1 = n1lo; n1 <= 2 * R + 1; n1 += 2) {
        for (long n2 = n2lo; n2 <= 2 * R + 1; n2 += 2) {
            CBall q = (omw.tau1 * (n1 * n1) + omw.tau2 * (2 * n1 * n2) + omw.tau3 * (n2 * n2))
                          .mul_rat(quarter);
            CBall term = expi_pi(q);
            long g1 = (n1 - ch.a[0]) / 2;
            long g2 = (n2 - ch.a[1]) / 2;
            bool neg = ((g1 * ch.b[0] + g2 * ch.b[1]) % 2) != 0;
            sum = neg ? sum - term : sum + term;
        }
    }
    sum = sum.at_prec(prec);
    return CBall(RBall(sum.re().mid(), sum.re().rad() + tail),
                 RBall(sum.im().mid(), sum.im().rad() + tail));
}

namespace {

CBall prod(const std::array<CBall, 10>& th, std::initializer_list<int> idx) {
    CBall p = th[static_cast<size_t>(*idx.begin())];
    bool first = true;
    for (int j : idx) {
        if (first) {
            first = false;
            continue;
        }
        p = p * th[static_cast<size_t>(j)];
    }
    return p;
}

struct S15Term {
    int sign;
    std::array<int, 2> p9;
    std::array<int, 2> p5;
    std::array<int, 2> p1;
};

// The 30 monomials theta_{jk}^9 theta_{lm}^5 theta_{pq} of the weight-15 form.
const std::array<S15Term, 30> kS15 = {{
    {+1, {0, 7}, {1, 8}, {2, 4}}, {-1, {2, 5}, {1, 6}, {0, 9}}, {+1, {5, 8}, {0, 3}, {4, 6}},
    {-1, {0, 9}, {2, 5}, {1, 6}}, {+1, {0, 9}, {1, 6}, {2, 5}}, {-1, {6, 7}, {2, 3}, {8, 9}},
    {+1, {1, 8}, {2, 4}, {0, 7}}, {-1, {2, 4}, {1, 8}, {0, 7}}, {-1, {4, 6}, {0, 3}, {5, 8}},
    {-1, {2, 4}, {0, 7}, {1, 8}}, {-1, {8, 9}, {6, 7}, {2, 3}}, {-1, {0, 7}, {2, 4}, {1, 8}},
    {+1, {8, 9}, {2, 3}, {6, 7}}, {-1, {4, 9}, {1, 3}, {5, 7}}, {+1, {1, 6}, {0, 9}, {2, 5}},
    {-1, {0, 3}, {4, 6}, {5, 8}}, {+1, {1, 6}, {2, 5}, {0, 9}}, {-1, {4, 6}, {5, 8}, {0, 3}},
    {-1, {2, 5}, {0, 9}, {1, 6}}, {-1, {5, 7}, {4, 9}, {1, 3}}, {+1, {6, 7}, {8, 9}, {2, 3}},
    {+1, {5, 8}, {4, 6}, {0, 3}}, {+1, {5, 7}, {1, 3}, {4, 9}}, {-1, {2, 3}, {8, 9}, {6, 7}},
    {+1, {1, 8}, {0, 7}, {2, 4}}, {+1, {0, 3}, {5, 8}, {4, 6}}, {+1, {2, 3}, {6, 7}, {8, 9}},
    {+1, {4, 9}, {5, 7}, {1, 3}}, {-1, {1, 3}, {5, 7}, {4, 9}}, {+1, {1, 3}, {4, 9}, {5, 7}},
}};

}  // namespace

FormValues eval_forms(const HilbertPoint& z, mpfr_prec_t prec) {
    PeriodMatrix om = mu5(z.z1, z.z2);
    std::array<CBall, 10> th;
    for (size_t j = 0; j < 10; ++j) th[j] = theta_const(om, char_table()[j], prec);

    FormValues f;
    f.g2 = prod(th, {0, 1, 4, 5}) - prod(th, {1, 2, 7, 9}) - prod(th, {3, 4, 7, 8}) +
           prod(th, {0, 2, 6, 8}) + prod(th, {3, 5, 6, 9});
    f.s5 = prod(th, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}).mul_rat(make_rat(1, 64));
    f.s6 = (prod(th, {0, 1, 2, 4, 7, 8}).pow(2) + prod(th, {0, 1, 2, 5, 6, 9}).pow(2) +
            prod(th, {0, 3, 4, 5, 6, 8}).pow(2) + prod(th, {2, 3, 6, 7, 8, 9}).pow(2) +
            prod(th, {1, 3, 4, 5, 7, 9}).pow(2))
               .mul_rat(make_rat(1, 256));
    f.s10 = f.s5 * f.s5;

    std::array<CBall, 10> th5, th9;
    for (size_t j = 0; j < 10; ++j) {
        th5[j] = th[j].pow(5);
        th9[j] = th5[j] * th[j].pow(4);
    }
    CBall acc = CBall::zero(prec);
    for (const auto& t : kS15) {
        CBall m = th9[static_cast<size_t>(t.p9[0])] * th9[static_cast<size_t>(t.p9[1])] *
                  th5[static_cast<size_t>(t.p5[0])] * th5[static_cast<size_t>(t.p5[1])] *
                  th[static_cast<size_t>(t.p1[0])] * th[static_cast<size_t>(t.p1[1])];
        acc = (t.sign > 0) ? acc + m : acc - m;
    }
    f.s15 = acc.mul_rat(make_rat(-1, 262144));  // -2^{-18}
    return f;
}

XYValue eval_xy(const FormValues& f) {
    mpfr_prec_t prec = f.g2.prec();
    Real pole_threshold = Real::pow2(-static_cast<long>(prec) / 2, 64);
    if (!(f.g2.abs_lower() > pole_threshold))
        throw std::domain_error("eval_xy: |g2| below threshold, too close to the pole set");
    CBall g2c = f.g2 * f.g2 * f.g2;
    XYValue out;
    out.x = f.s6.mul_rat(Rat(800)) / g2c;                       // 2^5 5^2
    out.y = f.s10.mul_rat(Rat(3200000)) / (g2c * f.g2 * f.g2);  // 2^10 5^5
    return out;
}

XYValue eval_xy(const HilbertPoint& z, mpfr_prec_t prec) {
    return eval_xy(eval_forms(z, prec));
}

CanonicalPoint canonical_point(const FormValues& f) {
    mpfr_prec_t prec = f.g2.prec();
    RBall sqrt5 = RBall::of(Rat(5), prec).sqrt_pos();
    CanonicalPoint p;
    p.a = f.g2;
    p.c = (f.s5 * CBall::real(sqrt5)).mul_rat(Rat(800));
    p.b = f.s6.mul_rat(Rat(800));
    p.d = f.s15.mul_rat(make_rat(25600000, 3));  // 2^13 5^5 / 3
    return p;
}

IcosahedralPoint icosahedral_point(const FormValues& f) {
    IcosahedralPoint q;
    q.a = f.g2;
    q.b = f.s6.mul_rat(Rat(800));
    q.c = f.s10.mul_rat(Rat(3200000));
    XYValue xy = eval_xy(f);
    q.x = xy.x;
    q.y = xy.y;
    return q;
}

Real klein_residual(const CanonicalPoint& p) {
    mpfr_prec_t prec = p.a.prec();
    CBall c2 = p.c * p.c;
    CBall b2 = p.b * p.b;
    CBall lhs = (p.d * p.d) * 144;
    CBall inner = b2 * 5 - p.a * c2;
    CBall rhs = -(b2 * b2 * p.b) * 1728 + (p.a * c2 * b2 * p.b) * 720 -
                (p.a * p.a * c2 * c2 * p.b) * 80 + (p.a * p.a * p.a * inner * inner) * 64 +
                c2 * c2 * c2;
    Real num = (lhs - rhs).abs_upper().to_real(64);
    Real den(64);
    mpfr_max(den.get(), lhs.abs_lower().get(), rhs.abs_lower().get(), MPFR_RNDD);
    Real eps = Real::pow2(-static_cast<long>(prec), 64);
    if (den < eps) den = eps;
    return num / den;
}

Real cover_residual(const CanonicalPoint& p, const IcosahedralPoint& q) {
    mpfr_prec_t prec = p.a.prec();
    Real num = (p.c * p.c - q.c).abs_upper().to_real(64);
    Real den = q.c.abs_lower();
    Real eps = Real::pow2(-static_cast<long>(prec), 64);
    if (den < eps) den = eps;
    return num / den;
}

}  // namespace kleincm
