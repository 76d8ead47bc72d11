#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kleincm/surfaces.hpp"

using namespace kleincm;

TEST_CASE("S equation at (1, 1, 1)") {
    SparsePoly p = emit_equation(SurfaceKind::S, {1, 1, 1});
    // z^2 - x^3 + 16 x^2 y^3 - 20 x^2 y^2 - 20 x y^3 - y^4
    CHECK(p.term_count() == 6);
    CHECK(p.terms().at({0, 0, 2}) == 1);
    CHECK(p.terms().at({3, 0, 0}) == -1);
    CHECK(p.terms().at({2, 3, 0}) == 16);
    CHECK(p.terms().at({2, 2, 0}) == -20);
    CHECK(p.terms().at({1, 3, 0}) == -20);
    CHECK(p.terms().at({0, 4, 0}) == -1);
}

TEST_CASE("K equation at (0, 0)") {
    SparsePoly p = emit_equation(SurfaceKind::K, {0, 0});
    // v^2 - (u^2 - 2y^5)(u - 5y^2)
    CHECK(p.terms().at({0, 2, 0}) == 1);
    CHECK(p.terms().at({3, 0, 0}) == -1);
    CHECK(p.terms().at({2, 0, 2}) == 5);
    CHECK(p.terms().at({1, 0, 5}) == 2);
    CHECK(p.terms().at({0, 0, 7}) == -10);
    CHECK(p.term_count() == 5);
}

TEST_CASE("CD equation at (0, 0, 1, 0)") {
    SparsePoly p = emit_equation(SurfaceKind::CD, {0, 0, 1, 0});
    // y^2 - x^3 + t^5 x - t^5
    CHECK(p.term_count() == 4);
    CHECK(p.terms().at({0, 2, 0}) == 1);
    CHECK(p.terms().at({3, 0, 0}) == -1);
    CHECK(p.terms().at({1, 0, 5}) == 1);
    CHECK(p.terms().at({0, 0, 5}) == -1);
}

TEST_CASE("arity is checked") {
    CHECK_THROWS_AS(emit_equation(SurfaceKind::S, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(emit_equation(SurfaceKind::K, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(emit_equation(SurfaceKind::CD, {1}), std::invalid_argument);
}

TEST_CASE("scaling identity vanishes exactly") {
    CHECK(scaling_check(1, 1, 1, Rat(2)).is_zero());
    CHECK(scaling_check(1, 1, 1, Rat(-1)).is_zero());
    CHECK(scaling_check(make_rat(2, 3), make_rat(-1, 5), Rat(7), make_rat(3, 2)).is_zero());
    std::mt19937 rng(6);
    for (int t = 0; t < 100; ++t) {
        auto r = [&]() {
            Rat q(static_cast<long>(rng() % 39) - 19, static_cast<long>(rng() % 9) + 1);
            q.canonicalize();
            return q;
        };
        Rat kappa = r();
        if (kappa == 0) kappa = make_rat(5, 3);
        CHECK(scaling_check(r(), r(), r(), kappa).is_zero());
    }
    CHECK_THROWS_AS(scaling_check(1, 1, 1, Rat(0)), std::invalid_argument);
}

TEST_CASE("rendering") {
    SparsePoly p = emit_equation(SurfaceKind::CD, {0, 0, 1, 0});
    CHECK(p.str() == "-x^3 + x*t^5 + y^2 - t^5");
}
