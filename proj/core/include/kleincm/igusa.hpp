#pragma once

#include <array>
#include <utility>
#include <vector>

#include "kleincm/ball.hpp"
#include "kleincm/rational.hpp"

namespace kleincm {

/// Index patterns (pairs (i, j), i < j) of the distinct terms in the S6
/// orbit of each displayed Igusa-Clebsch monomial: 15, 10 and 60 terms.
const std::vector<std::vector<std::pair<int, int>>>& i2_orbit();
const std::vector<std::vector<std::pair<int, int>>>& i4_orbit();
const std::vector<std::vector<std::pair<int, int>>>& i6_orbit();

template <typename T>
struct IgusaClebschT {
    T i2, i4, i6, i10;  // weights (1 : 2 : 3 : 5)
};

using IgusaClebsch = IgusaClebschT<Rat>;

struct IgusaJ {
    Rat j2, j4, j6, j10;
};

struct AbsoluteInvariants {
    Rat m1, m2, m3;
};

/// Point of P(2:3:5:6) parametrizing the Kummer-quotient elliptic fibration.
struct CDPoint {
    Rat alpha, beta, gamma, delta;
};

namespace detail {

template <typename T>
T pattern_value(const std::vector<T>& roots, const std::vector<std::pair<int, int>>& pat) {
    T v = (roots[static_cast<size_t>(pat[0].first)] - roots[static_cast<size_t>(pat[0].second)]);
    v = v * v;
    for (size_t t = 1; t < pat.size(); ++t) {
        T d = roots[static_cast<size_t>(pat[t].first)] - roots[static_cast<size_t>(pat[t].second)];
        v = v * (d * d);
    }
    return v;
}

template <typename T>
T small_pow(T base, unsigned e) {
    T acc = base;
    for (unsigned i = 1; i < e; ++i) acc = acc * base;
    return acc;
}

}  // namespace detail

/// Igusa-Clebsch invariants of y^2 = u0 (x - x1)...(x - x6); the sums run
/// over the distinct index patterns in the S6 orbit of each displayed
/// monomial, each distinct term counted once. Exact for rational roots, ball
/// arithmetic for complex roots.
template <typename T>
IgusaClebschT<T> igusa_clebsch(const std::vector<T>& roots, const T& u0) {
    if (roots.size() != 6)
        throw std::invalid_argument("igusa_clebsch: exactly six roots required");
    auto sum_orbit = [&](const std::vector<std::vector<std::pair<int, int>>>& orbit) {
        T s = detail::pattern_value(roots, orbit[0]);
        for (size_t t = 1; t < orbit.size(); ++t) s = s + detail::pattern_value(roots, orbit[t]);
        return s;
    };
    // I10 = u0^10 prod_{i<j} (xi - xj)^2
    std::vector<std::pair<int, int>> all;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) all.emplace_back(i, j);
    IgusaClebschT<T> out{sum_orbit(i2_orbit()) * detail::small_pow(u0, 2),
                         sum_orbit(i4_orbit()) * detail::small_pow(u0, 4),
                         sum_orbit(i6_orbit()) * detail::small_pow(u0, 6),
                         detail::pattern_value(roots, all) * detail::small_pow(u0, 10)};
    return out;
}

/// Igusa's arithmetic J-invariants and the absolute invariants
/// m1 = J2^5/J10, m2 = J2^3 J4/J10, m3 = J2^2 J6/J10. Requires J10 != 0.
std::pair<IgusaJ, AbsoluteInvariants> invariants_chain(const IgusaClebsch& ic);

/// The coordinate change to P(2:3:5:6): alpha = I4/9,
/// beta = (-I2 I4 + 3 I6)/27, gamma = 8 I10, delta = (2/3) I2 I10.
CDPoint cd_from_i(const IgusaClebsch& ic);

/// Inverse of cd_from_i; requires gamma != 0.
IgusaClebsch i_from_cd(const CDPoint& p);

/// The Humbert-locus embedding P(1:3:5) -> P(2:3:5:6), exact on rational
/// representatives (A : B : C); excluded point (1 : 0 : 0).
CDPoint psi5(const Rat& a, const Rat& b, const Rat& c);

/// The same map on a numeric representative (theta-constant values).
struct CDPointBall {
    CBall alpha, beta, gamma, delta;
};

CDPointBall psi5(const CBall& a, const CBall& b, const CBall& c);

}  // namespace kleincm
