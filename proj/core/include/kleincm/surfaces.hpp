#pragma once

#include <map>
#include <string>
#include <vector>

#include "kleincm/rational.hpp"

namespace kleincm {

/// Sparse multivariate polynomial over Q with named variables; zero
/// coefficients are never stored.
class SparsePoly {
  public:
    explicit SparsePoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    const std::vector<std::string>& vars() const { return vars_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    void add_term(const std::vector<unsigned>& exps, const Rat& coeff);
    const std::map<std::vector<unsigned>, Rat>& terms() const { return terms_; }

    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b);
    SparsePoly scale(const Rat& q) const;
    /// Substitute variable i -> q_i * variable i (diagonal weighted scaling).
    SparsePoly scale_vars(const std::vector<Rat>& factors) const;

    std::string str() const;

  private:
    std::vector<std::string> vars_;
    std::map<std::vector<unsigned>, Rat> terms_;
};

enum class SurfaceKind { S, K, CD };

/// The defining polynomial, all terms moved to one side:
///   S:  z^2 - x^3 + 4(4y^3 - 5A y^2)x^2 - 20B y^3 x - C y^4   in (x, y, z)
///   K:  v^2 - (u^2 - 2y^5)(u - (5y^2 - 10X y + Y))            in (u, v, y)
///   CD: y^2 - x^3 - (-3a t^4 - g t^5)x - (t^5 - 2b t^6 + d t^7) in (x, y, t)
SparsePoly emit_equation(SurfaceKind kind, const std::vector<Rat>& params);

/// Substitute (x,y,z) -> (k^6 x, k^2 y, k^9 z) into the S-equation at the
/// kappa-scaled point and subtract kappa^18 times the original equation;
/// the result is identically zero.
SparsePoly scaling_check(const Rat& a, const Rat& b, const Rat& c, const Rat& kappa);

}  // namespace kleincm
