#pragma once

#include <array>
#include <string>

#include "kleincm/qfield.hpp"

namespace kleincm {

enum class CaseLabel { i, ii, iii, iv, v };

std::string to_string(CaseLabel c);

struct FieldInvariants {
    Int conductor;
    Int discriminant;
};

/// zeta = alpha/kappa defining the Riemann form E(u,v) = Tr(zeta u v^rho).
struct PolarizationSpec {
    QuartElem zeta;
    Rat kappa;
};

using IntSkewMatrix4 = std::array<std::array<Int, 4>, 4>;

/// Strict normal-form validation; throws std::invalid_argument on violation.
/// require_cm additionally rejects A >= 0.
void validate_spec(const CMFieldSpec& spec, bool require_cm = true);

/// The unique matching case of the five-way classification by the parities
/// of Delta and B and the residues of A+B and A -/+ C mod 4.
CaseLabel classify(const CMFieldSpec& spec);

/// Conductor 2^l Delta |A| and discriminant 2^e Delta^3 A^2, (l, e) by case.
FieldInvariants field_invariants(const CMFieldSpec& spec);

/// Integral basis of the ring of integers, by case.
std::array<QuartElem, 4> integral_basis(const CMFieldSpec& spec);

/// The polarization element giving a principal polarization; Delta = 5 only.
PolarizationSpec zeta_principal(const CMFieldSpec& spec);

/// Gram matrix M[j][k] = Tr(zeta a_j a_k^rho) of the Riemann form on the
/// given basis; throws if an entry is not a rational integer.
IntSkewMatrix4 riemann_gram(const std::array<QuartElem, 4>& basis, const PolarizationSpec& pol);

/// Closed form of the Gram matrix on the integral basis for a given kappa,
/// as exact rationals (the trace route must agree entry by entry).
std::array<std::array<Rat, 4>, 4> gram_closed_form(const CMFieldSpec& spec, const Rat& kappa);

/// Positive square root of det(M) for a skew integer matrix;
/// value 1 <=> principal polarization.
Int pfaffian(const IntSkewMatrix4& m);

}  // namespace kleincm
