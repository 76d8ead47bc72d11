#include "kleincm/real.hpp"

#include <cstdio>
#include <vector>

namespace kleincm {

Int Real::round_to_int() const {
    mpfr_t t;
    mpfr_init2(t, mpfr_get_prec(v_));
    mpfr_rint(t, v_, MPFR_RNDN);
    Int out;
    mpfr_get_z(out.get_mpz_t(), t, MPFR_RNDN);
    mpfr_clear(t);
    return out;
}

std::string Real::str(size_t digits) const {
    if (!mpfr_number_p(v_)) return mpfr_nan_p(v_) ? "nan" : (mpfr_sgn(v_) > 0 ? "inf" : "-inf");
    if (digits == 0) digits = static_cast<size_t>(prec() * 0.3010299957) + 3;
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    bool neg = !mant.empty() && mant[0] == '-';
    std::string dig = neg ? mant.substr(1) : mant;
    std::string out = (neg ? "-" : "") + (dig.empty() ? std::string("0") : dig.substr(0, 1));
    if (dig.size() > 1) out += "." + dig.substr(1);
    out += "e" + std::to_string(static_cast<long>(e) - 1);
    return out;
}

Real sqrt_real(const Real& x) { return x.sqrt(); }

Real exp_real(const Real& x) {
    Real r(x.prec());
    mpfr_exp(r.get(), x.get(), MPFR_RNDN);
    return r;
}

}  // namespace kleincm
