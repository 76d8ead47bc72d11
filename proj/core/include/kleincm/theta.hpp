#pragma once

#include <array>
#include <utility>

#include "kleincm/symplectic.hpp"

namespace kleincm {

/// Even theta characteristic: a, b in {0,1}^2 with a.b even.
struct ThetaChar {
    std::array<int, 2> a;
    std::array<int, 2> b;
    bool is_even() const { return (a[0] * b[0] + a[1] * b[1]) % 2 == 0; }
};

/// The ten even characteristics indexed j = 0..9.
const std::array<ThetaChar, 10>& char_table();

/// Genus-2 theta constant: the lattice sum over Z^2 of
/// exp(pi i (t(g + a/2) Omega (g + a/2) + tg b)), truncated with a Gaussian
/// tail bound below 2^{-prec-4} chosen from the smallest eigenvalue of
/// Im(Omega); the tail bound is added to the result radius.
CBall theta_const(const PeriodMatrix& om, const ThetaChar& ch, mpfr_prec_t prec);

/// Symmetric Hilbert modular forms of weight 2, 5, 6, 10, 15 as polynomial
/// combinations of the ten theta constants at mu5(z1, z2); s10 = s5^2.
struct FormValues {
    CBall g2, s5, s6, s10, s15;
};

FormValues eval_forms(const HilbertPoint& z, mpfr_prec_t prec);

/// The weight-0 Hilbert modular functions X = 2^5 5^2 s6/g2^3,
/// Y = 2^10 5^5 s10/g2^5. Throws near the g2 = 0 pole set.
struct XYValue {
    CBall x;
    CBall y;
};

XYValue eval_xy(const HilbertPoint& z, mpfr_prec_t prec);
XYValue eval_xy(const FormValues& f);

/// Weighted (2:5:6:15) representative of the canonical-model point
/// (A : c : B : D) = (g2 : 2^5 5^2 sqrt5 s5 : 2^5 5^2 s6 : 2^13 5^5 3^{-1} s15).
struct CanonicalPoint {
    CBall a;  // weight 2
    CBall c;  // weight 5
    CBall b;  // weight 6
    CBall d;  // weight 15
};

/// Weighted (1:3:5) representative (A : B : C) with the derived affine X, Y.
struct IcosahedralPoint {
    CBall a;
    CBall b;
    CBall c;  // = the canonical point's c^2
    CBall x;
    CBall y;
};

CanonicalPoint canonical_point(const FormValues& f);
IcosahedralPoint icosahedral_point(const FormValues& f);

/// Relative residual of 144 D^2 = -1728 B^5 + 720 A c^2 B^3 - 80 A^2 c^4 B
///                                + 64 A^3 (5 B^2 - A c^2)^2 + c^6.
Real klein_residual(const CanonicalPoint& p);

/// Relative residual of the c^2 = C double-cover identity.
Real cover_residual(const CanonicalPoint& p, const IcosahedralPoint& q);

}  // namespace kleincm
