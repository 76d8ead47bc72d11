#include "kleincm/surfaces.hpp"

#include <sstream>
#include <stdexcept>

namespace kleincm {

void SparsePoly::add_term(const std::vector<unsigned>& exps, const Rat& coeff) {
    if (exps.size() != vars_.size())
        throw std::invalid_argument("SparsePoly: exponent arity mismatch");
    if (coeff == 0) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
    if (a.vars_ != b.vars_) throw std::invalid_argument("SparsePoly: variable mismatch");
    SparsePoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
}

SparsePoly SparsePoly::scale(const Rat& q) const {
    SparsePoly r(vars_);
    if (q == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * q);
    return r;
}

SparsePoly SparsePoly::scale_vars(const std::vector<Rat>& factors) const {
    if (factors.size() != vars_.size())
        throw std::invalid_argument("SparsePoly: scaling arity mismatch");
    SparsePoly r(vars_);
    for (const auto& [e, c] : terms_) {
        Rat f = c;
        for (size_t i = 0; i < e.size(); ++i) f *= rat_pow(factors[i], e[i]);
        r.add_term(e, f);
    }
    return r;
}

std::string SparsePoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rat& c = it->second;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Rat ac = abs(c);
        bool unit = (ac == 1);
        bool any_var = false;
        std::ostringstream vs;
        for (size_t i = 0; i < vars_.size(); ++i) {
            unsigned e = it->first[i];
            if (e == 0) continue;
            if (any_var) vs << "*";
            any_var = true;
            vs << vars_[i];
            if (e > 1) vs << "^" << e;
        }
        if (!unit || !any_var) {
            os << ac.get_str();
            if (any_var) os << "*";
        }
        os << vs.str();
    }
    return os.str();
}

SparsePoly emit_equation(SurfaceKind kind, const std::vector<Rat>& params) {
    switch (kind) {
        case SurfaceKind::S: {
            if (params.size() != 3)
                throw std::invalid_argument("emit_equation: S takes (A, B, C)");
            const Rat &a = params[0], &b = params[1], &c = params[2];
            SparsePoly p({"x", "y", "z"});
            p.add_term({0, 0, 2}, 1);        // z^2
            p.add_term({3, 0, 0}, -1);       // -x^3
            p.add_term({2, 3, 0}, 16);       // +16 x^2 y^3
            p.add_term({2, 2, 0}, a * -20);  // -20A x^2 y^2
            p.add_term({1, 3, 0}, b * -20);  // -20B x y^3
            p.add_term({0, 4, 0}, -c);       // -C y^4
            return p;
        }
        case SurfaceKind::K: {
            if (params.size() != 2)
                throw std::invalid_argument("emit_equation: K takes (X, Y)");
            const Rat &x = params[0], &y = params[1];
            // v^2 - (u^2 - 2y^5)(u - (5y^2 - 10X y + Y))
            SparsePoly p({"u", "v", "y"});
            p.add_term({0, 2, 0}, 1);
            p.add_term({3, 0, 0}, -1);       // -u^3
            p.add_term({2, 0, 2}, 5);        // +5 u^2 y^2
            p.add_term({2, 0, 1}, x * -10);  // -10X u^2 y
            p.add_term({2, 0, 0}, y);        // +Y u^2
            p.add_term({1, 0, 5}, 2);        // +2 u y^5
            p.add_term({0, 0, 7}, -10);      // -10 y^7
            p.add_term({0, 0, 6}, x * 20);   // +20X y^6
            p.add_term({0, 0, 5}, y * -2);   // -2Y y^5
            return p;
        }
        case SurfaceKind::CD: {
            if (params.size() != 4)
                throw std::invalid_argument("emit_equation: CD takes (alpha, beta, gamma, delta)");
            const Rat &a = params[0], &b = params[1], &g = params[2], &d = params[3];
            SparsePoly p({"x", "y", "t"});
            p.add_term({0, 2, 0}, 1);       // y^2
            p.add_term({3, 0, 0}, -1);      // -x^3
            p.add_term({1, 0, 4}, a * 3);   // +3a t^4 x
            p.add_term({1, 0, 5}, g);       // +g t^5 x
            p.add_term({0, 0, 5}, -1);      // -t^5
            p.add_term({0, 0, 6}, b * 2);   // +2b t^6
            p.add_term({0, 0, 7}, -d);      // -d t^7
            return p;
        }
    }
    throw std::logic_error("emit_equation: bad kind");
}

SparsePoly scaling_check(const Rat& a, const Rat& b, const Rat& c, const Rat& kappa) {
    if (kappa == 0) throw std::invalid_argument("scaling_check: kappa must be nonzero");
    Rat k2 = rat_pow(kappa, 2);
    SparsePoly scaled_eq =
        emit_equation(SurfaceKind::S, {a * k2, b * rat_pow(kappa, 6), c * rat_pow(kappa, 10)});
    SparsePoly lhs = scaled_eq.scale_vars({rat_pow(kappa, 6), k2, rat_pow(kappa, 9)});
    SparsePoly rhs = emit_equation(SurfaceKind::S, {a, b, c}).scale(rat_pow(kappa, 18));
    return lhs - rhs;
}

}  // namespace kleincm
