#include "kleincm/recognition.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kleincm {

namespace detail {

namespace {

long max_entry_bits(const std::vector<std::vector<Int>>& basis) {
    size_t bits = 1;
    for (const auto& row : basis)
        for (const Int& e : row) bits = std::max(bits, mpz_sizeinbase(e.get_mpz_t(), 2));
    return static_cast<long>(bits);
}

struct Gso {
    // Exact Gram matrix of the current basis and its floating Cholesky-style
    // factorization: r[i][j] = <b_i, b*_j>, mu[i][j] = r[i][j] / r[j][j].
    std::vector<std::vector<Int>> gram;
    std::vector<std::vector<Real>> r;
    std::vector<std::vector<Real>> mu;
    mpfr_prec_t prec;

    void init(const std::vector<std::vector<Int>>& b, mpfr_prec_t p) {
        prec = p;
        size_t m = b.size();
        gram.assign(m, std::vector<Int>(m));
        r.assign(m, std::vector<Real>(m, Real(prec)));
        mu.assign(m, std::vector<Real>(m, Real(prec)));
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j <= i; ++j) gram[i][j] = dot(b[i], b[j]);
    }

    static Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
        Int s = 0;
        for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
        return s;
    }

    const Int& g(size_t i, size_t j) const { return i >= j ? gram[i][j] : gram[j][i]; }

    void refresh_row(size_t i, const std::vector<std::vector<Int>>& b) {
        for (size_t j = 0; j <= i; ++j) gram[i][j] = dot(b[i], b[j]);
        for (size_t j = i + 1; j < gram.size(); ++j) gram[j][i] = dot(b[j], b[i]);
    }

    void gso_row(size_t i) {
        for (size_t j = 0; j <= i; ++j) {
            Real acc = Real::of(g(i, j), prec);
            for (size_t k = 0; k < j; ++k) acc = acc - mu[j][k] * r[i][k];
            r[i][j] = acc;
            if (j < i) mu[i][j] = r[i][j] / r[j][j];
        }
        mu[i][i] = Real::of(1, prec);
    }
};

}  // namespace

void lll_reduce(std::vector<std::vector<Int>>& basis) {
    const size_t m = basis.size();
    if (m < 2) return;
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(max_entry_bits(basis) + 128);
    Gso gso;
    gso.init(basis, prec);
    gso.gso_row(0);

    const Real delta = Real::of(make_rat(99, 100), 64);
    const Real half_plus = Real::of(make_rat(51, 100), 64);

    size_t k = 1;
    size_t top_valid = 0;  // gso rows [0, top_valid] are current
    while (k < m) {
        if (top_valid < k) {
            for (size_t i = top_valid + 1; i <= k; ++i) gso.gso_row(i);
            top_valid = k;
        }
        // Size-reduce b_k against b_{k-1}, ..., b_0.
        bool changed = true;
        int rounds = 0;
        while (changed && rounds++ < 64) {
            changed = false;
            for (size_t j = k; j-- > 0;) {
                if (!(gso.mu[k][j].abs() > half_plus)) continue;
                Int q = gso.mu[k][j].round_to_int();
                if (q == 0) continue;
                changed = true;
                for (size_t c = 0; c < basis[k].size(); ++c) basis[k][c] -= q * basis[j][c];
                gso.refresh_row(k, basis);
            }
            if (changed) gso.gso_row(k);
        }
        // Lovasz condition on (k-1, k).
        Real lhs = gso.r[k][k];
        Real rhs = (delta - gso.mu[k][k - 1] * gso.mu[k][k - 1]) * gso.r[k - 1][k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(basis[k], basis[k - 1]);
            gso.refresh_row(k - 1, basis);
            gso.refresh_row(k, basis);
            gso.gso_row(k - 1);
            top_valid = k - 1;
            k = std::max<size_t>(k - 1, 1);
        }
    }
}

}  // namespace detail

CBall eval_poly(const std::vector<Int>& coeffs, const CBall& v) {
    mpfr_prec_t prec = v.prec();
    CBall acc = CBall::zero(prec);
    for (size_t i = coeffs.size(); i-- > 0;) {
        acc = acc * v + CBall::real(RBall::of(coeffs[i], prec));
    }
    return acc;
}

std::string CandidatePoly::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] == 0) continue;
        Int a = abs(coeffs[i]);
        if (first) {
            if (coeffs[i] < 0) os << "-";
            first = false;
        } else {
            os << (coeffs[i] < 0 ? " - " : " + ");
        }
        if (a != 1 || i == 0) os << a.get_str();
        if (i >= 1) {
            if (a != 1) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return first ? "0" : os.str();
}

namespace {

void normalize_candidate(std::vector<Int>& c) {
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    Int content = 0;
    for (const Int& e : c) {
        Int g;
        mpz_gcd(g.get_mpz_t(), content.get_mpz_t(), e.get_mpz_t());
        content = g;
    }
    if (content > 1)
        for (Int& e : c) e /= content;
    if (c.back() < 0)
        for (Int& e : c) e = -e;
}

Real poly_scale(const std::vector<Int>& coeffs, const CBall& v) {
    // max(1, |v|)^deg. Deliberately independent of the coefficient height:
    // pigeonhole junk with large coefficients must not pass the threshold on
    // size grounds; the height cap and re-verification weed it out.
    Real av = v.abs_upper().to_real(64);
    Real one = Real::of(1, 64);
    if (av < one) av = one;
    Real scale = Real::of(1, 64);
    for (size_t i = 1; i < coeffs.size(); ++i) scale = scale * av;
    return scale;
}

}  // namespace

std::optional<CandidatePoly> min_poly(const RecognitionRequest& req) {
    if (req.prec < 53) throw std::invalid_argument("min_poly: prec must be >= 53");
    if (req.max_degree < 1) throw std::invalid_argument("min_poly: max_degree must be >= 1");
    const mpfr_prec_t prec = req.prec;
    const bool use_im = !req.expect_real && !req.value.im().mid().is_zero();

    // Scaled powers of the value: round(2^prec * Re v^i), likewise Im.
    std::vector<Int> rcol, icol;
    CBall p = CBall::of(Rat(1), Rat(0), prec + 32);
    Real scale2 = Real::pow2(static_cast<long>(prec), prec + 32);
    for (int i = 0; i <= req.max_degree; ++i) {
        rcol.push_back((p.re().mid() * scale2).round_to_int());
        icol.push_back((p.im().mid() * scale2).round_to_int());
        p = p * req.value;
    }

    Real threshold = Real::pow2(-static_cast<long>(prec) / 2, 64);
    Int height_cap = Int(1) << static_cast<unsigned long>(req.height_bits);

    for (int d = 1; d <= req.max_degree; ++d) {
        size_t rows = static_cast<size_t>(d) + 1;
        size_t cols = rows + 1 + (use_im ? 1 : 0);
        std::vector<std::vector<Int>> basis(rows, std::vector<Int>(cols, 0));
        for (size_t i = 0; i < rows; ++i) {
            basis[i][i] = 1;
            basis[i][rows] = rcol[i];
            if (use_im) basis[i][rows + 1] = icol[i];
        }
        detail::lll_reduce(basis);

        // Accept the candidate of smallest effective degree, then smallest
        // residual, among rows passing the residual test.
        std::optional<CandidatePoly> best;
        for (const auto& row : basis) {
            std::vector<Int> c(row.begin(), row.begin() + static_cast<long>(rows));
            bool nonconst = false;
            for (size_t i = 1; i < c.size(); ++i) nonconst |= (c[i] != 0);
            if (!nonconst) continue;
            normalize_candidate(c);
            bool too_big = false;
            for (const Int& e : c) {
                Int a = abs(e);
                too_big |= (a > height_cap);
            }
            if (too_big) continue;
            Real res = eval_poly(c, req.value).abs_upper().to_real(64);
            Real bound = threshold * poly_scale(c, req.value);
            if (!(res < bound)) continue;
            bool better = !best || c.size() < best->coeffs.size() ||
                          (c.size() == best->coeffs.size() && res < best->residual);
            if (better) {
                CandidatePoly cand;
                cand.coeffs = std::move(c);
                cand.residual = res;
                best = std::move(cand);
            }
        }
        if (best) return best;
    }
    return std::nullopt;
}

Real verify_poly(CandidatePoly& p, const CBall& value, mpfr_prec_t prec2) {
    Real res = eval_poly(p.coeffs, value).abs_upper().to_real(64);
    Real bound =
        Real::pow2(-static_cast<long>(prec2) / 2, 64) * poly_scale(p.coeffs, value);
    p.verified = res < bound;
    p.residual = res;
    return res;
}

}  // namespace kleincm
