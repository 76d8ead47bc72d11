#pragma once

#include <optional>
#include <vector>

#include "kleincm/ball.hpp"

namespace kleincm {

/// Request to recognize a high-precision value as an algebraic number.
/// prec should be comfortably larger than max_degree * height_bits.
struct RecognitionRequest {
    CBall value;
    bool expect_real = false;   // recognize the real part, assert Im negligible
    int max_degree = 8;
    long height_bits = 256;     // coefficient bound 2^height_bits
    mpfr_prec_t prec = 128;
};

/// Primitive integer polynomial candidate, leading coefficient positive.
struct CandidatePoly {
    std::vector<Int> coeffs;  // c0 + c1 x + ... + cd x^d
    Real residual = Real(64);
    bool verified = false;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    std::string str() const;
};

/// Evaluate the polynomial at a complex ball (Horner).
CBall eval_poly(const std::vector<Int>& coeffs, const CBall& v);

/// Lowest-degree candidate with residual below 2^{-prec/2} * scale, found by
/// lattice reduction on the row lattice of [1, v, ..., v^d] scaled by 2^prec.
/// Returns nullopt when nothing within the bounds is found ("not
/// recognized", not a failure of the value).
std::optional<CandidatePoly> min_poly(const RecognitionRequest& req);

/// Residual |p(value)| at higher precision; sets p.verified iff the residual
/// is below 2^{-prec2/2} * scale. The caller recomputes value at prec2.
Real verify_poly(CandidatePoly& p, const CBall& value, mpfr_prec_t prec2);

namespace detail {

/// LLL reduction (delta = 0.99) of the rows of `basis`, in place.
/// Floating Gram-Schmidt over MPFR with exact integer size reduction.
void lll_reduce(std::vector<std::vector<Int>>& basis);

}  // namespace detail

}  // namespace kleincm
