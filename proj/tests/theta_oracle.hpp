#pragma once

#include <cmath>

#include "kleincm/theta.hpp"

namespace kleincm::testing {

/// One-dimensional Jacobi theta constant with characteristic (a, b):
/// sum_n exp(pi i ((n + a/2)^2 z + n b)); independent oracle for the
/// genus-2 diagonal factorization.
inline CBall jacobi_theta1(const CBall& z, int a, int b, mpfr_prec_t prec) {
    double y = z.im().mid().to_double();
    long n_max = static_cast<long>(std::sqrt((static_cast<double>(prec) + 48.0) * 0.6931 /
                                             (M_PI * y))) +
                 3;
    mpfr_prec_t wprec = prec + 32;
    CBall zw = z.at_prec(wprec);
    CBall sum = CBall::zero(wprec);
    for (long n = -n_max; n <= n_max; ++n) {
        Rat x(2 * n + a, 2);
        x.canonicalize();
        CBall q = zw.mul_rat(x * x);
        CBall term = expi_pi(q);
        if (((n * b) % 2 + 2) % 2 == 1) term = -term;
        sum = sum + term;
    }
    // Tail: the neglected terms are dominated by a geometric series.
    Mag tail = Mag::pow2(-static_cast<long>(prec) - 24);
    CBall out = sum.at_prec(prec);
    return CBall(RBall(out.re().mid(), out.re().rad() + tail),
                 RBall(out.im().mid(), out.im().rad() + tail));
}

}  // namespace kleincm::testing
