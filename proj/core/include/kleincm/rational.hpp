#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kleincm {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (base == 0) throw std::domain_error("rat_pow: 0 to a negative power");
        return rat_pow(Rat(1) / base, -e);
    }
    // base is canonical, so numerator and denominator powers stay coprime.
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

inline bool is_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

// Trial-division squarefree test; intended for the small field parameters.
inline bool is_squarefree(Int n) {
    n = abs(n);
    if (n == 0) return false;
    if (mpz_divisible_ui_p(n.get_mpz_t(), 4)) return false;
    for (Int p = 2; p * p <= n; ++p) {
        if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) return false;
        }
    }
    return true;
}

}  // namespace kleincm
