#pragma once

#include <array>
#include <optional>
#include <vector>

#include "kleincm/ball.hpp"
#include "kleincm/cm_field.hpp"

namespace kleincm {

using Mat4z = std::array<std::array<Int, 4>, 4>;

Mat4z mat4_identity();
Mat4z mat4_mul(const Mat4z& a, const Mat4z& b);
Mat4z mat4_transpose(const Mat4z& a);

/// The standard symplectic form [[0, I], [-I, 0]].
Mat4z standard_j();

/// Point of the Siegel upper half space, stored as the three distinct
/// entries of the symmetric 2x2 matrix [[tau1, tau2], [tau2, tau3]].
struct PeriodMatrix {
    CBall tau1;
    CBall tau2;
    CBall tau3;
};

/// Element of Sp(4, Z); the symplectic relation is validated exactly.
class Sp4Element {
  public:
    Sp4Element() : m_(mat4_identity()) {}
    explicit Sp4Element(Mat4z m);
    static Sp4Element identity() { return Sp4Element(); }
    static Sp4Element from_blocks(const std::array<std::array<long, 2>, 2>& a0,
                                  const std::array<std::array<long, 2>, 2>& b0,
                                  const std::array<std::array<long, 2>, 2>& c0,
                                  const std::array<std::array<long, 2>, 2>& d0);

    const Mat4z& mat() const { return m_; }
    Sp4Element inverse() const;
    friend Sp4Element operator*(const Sp4Element& a, const Sp4Element& b) {
        return Sp4Element(mat4_mul(a.m_, b.m_));
    }
    friend bool operator==(const Sp4Element& a, const Sp4Element& b) { return a.m_ == b.m_; }

    std::vector<Int> flat() const;  // row-major 16 integers

  private:
    Mat4z m_;
};

/// CM point coordinates on H x H.
struct HilbertPoint {
    CBall z1;
    CBall z2;
};

/// Unimodular U with U^T M U = J, exactly over the integers
/// (Frobenius-style pivoting on the skew Gram matrix). Requires Pfaffian 1.
Mat4z symplectic_reduce(const IntSkewMatrix4& m);

/// Whether U^T M U = J holds exactly.
bool is_symplectic_witness(const IntSkewMatrix4& m, const Mat4z& u);

/// Omega = -M2^{-1} M1 from the 2x4 lattice matrix (M1 M2); checks the
/// symmetry residual and positive-definiteness of Im(Omega).
PeriodMatrix period_matrix(const std::array<std::array<CBall, 4>, 2>& lattice, const Real& tol);

/// Moebius action (A0 Omega + B0)(C0 Omega + D0)^{-1}.
PeriodMatrix apply_sp4(const PeriodMatrix& om, const Sp4Element& g);

/// Upper bound of |tau1 - tau2 - tau3|.
Real humbert_residual(const PeriodMatrix& om);

/// The modular embedding of H x H onto the tau1 = tau2 + tau3 locus.
PeriodMatrix mu5(const CBall& z1, const CBall& z2);

/// Inverse of mu5 on the locus: z1 = (tau2 + sqrt5 tau2 + 2 tau3)/2, likewise
/// z2 with the conjugate sign. Requires the Humbert residual below tol.
HilbertPoint hilbert_from_n5(const PeriodMatrix& om, const Real& tol);

struct N5Result {
    bool ok = false;
    PeriodMatrix omega;      // valid when ok
    Sp4Element gamma;        // best candidate found (identity if none)
    Real best_residual;      // residual of gamma applied to the input
    long nodes_explored = 0;
};

/// Search for gamma in Sp(4,Z) carrying Omega into the tau1 = tau2 + tau3
/// locus: breadth-first over words in a fixed generator set up to `depth`.
/// A user-supplied candidate bypasses the search and is verified instead.
N5Result normalize_to_n5(const PeriodMatrix& om, int depth, const Real& tol,
                         const std::optional<Sp4Element>& user_gamma = std::nullopt,
                         long node_cap = 200000);

}  // namespace kleincm
