#include "kleincm/symplectic.hpp"

#include <complex>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace kleincm {

Mat4z mat4_identity() {
    Mat4z m{};
    for (int i = 0; i < 4; ++i) m[i][i] = 1;
    return m;
}

Mat4z mat4_mul(const Mat4z& a, const Mat4z& b) {
    Mat4z r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

Mat4z mat4_transpose(const Mat4z& a) {
    Mat4z r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[j][i];
    return r;
}

Mat4z standard_j() {
    Mat4z j{};
    j[0][2] = 1;
    j[1][3] = 1;
    j[2][0] = -1;
    j[3][1] = -1;
    return j;
}

namespace {

Mat4z congruence(const IntSkewMatrix4& m, const Mat4z& u) {
    Mat4z mm;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) mm[i][j] = m[i][j];
    return mat4_mul(mat4_transpose(u), mat4_mul(mm, u));
}

}  // namespace

bool is_symplectic_witness(const IntSkewMatrix4& m, const Mat4z& u) {
    return congruence(m, u) == standard_j();
}

Sp4Element::Sp4Element(Mat4z m) : m_(std::move(m)) {
    IntSkewMatrix4 j;
    Mat4z js = standard_j();
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) j[i][k] = js[i][k];
    if (!is_symplectic_witness(j, m_))
        throw std::invalid_argument("Sp4Element: matrix is not symplectic");
}

Sp4Element Sp4Element::from_blocks(const std::array<std::array<long, 2>, 2>& a0,
                                   const std::array<std::array<long, 2>, 2>& b0,
                                   const std::array<std::array<long, 2>, 2>& c0,
                                   const std::array<std::array<long, 2>, 2>& d0) {
    Mat4z m{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            m[i][j] = a0[i][j];
            m[i][j + 2] = b0[i][j];
            m[i + 2][j] = c0[i][j];
            m[i + 2][j + 2] = d0[i][j];
        }
    return Sp4Element(m);
}

Sp4Element Sp4Element::inverse() const {
    // M^{-1} = -J M^T J for symplectic M.
    Mat4z j = standard_j();
    Mat4z r = mat4_mul(j, mat4_mul(mat4_transpose(m_), j));
    for (auto& row : r)
        for (auto& e : row) e = -e;
    return Sp4Element(r);
}

std::vector<Int> Sp4Element::flat() const {
    std::vector<Int> out;
    out.reserve(16);
    for (const auto& row : m_)
        for (const auto& e : row) out.push_back(e);
    return out;
}

Mat4z symplectic_reduce(const IntSkewMatrix4& m) {
    if (pfaffian(m) != 1)
        throw std::domain_error("symplectic_reduce: Pfaffian != 1, not principally polarizable "
                                "in this basis");
    Mat4z u = mat4_identity();

    auto swap_cols = [&](int a, int b) {
        if (a == b) return;
        for (int r = 0; r < 4; ++r) std::swap(u[r][a], u[r][b]);
    };
    auto negate_col = [&](int a) {
        for (int r = 0; r < 4; ++r) u[r][a] = -u[r][a];
    };
    auto add_col = [&](int dst, int src, const Int& q) {
        for (int r = 0; r < 4; ++r) u[r][dst] += q * u[r][src];
    };
    auto round_div = [](const Int& a, const Int& p) {
        // nearest integer to a/p
        Int q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
        if (2 * r > p) q += 1;
        return q;
    };

    // Bring E = U^T M U into consecutive hyperbolic pairs (k, k+1).
    for (int k = 0; k < 4; k += 2) {
        for (int guard = 0; guard < 256; ++guard) {
            Mat4z e = congruence(m, u);
            int bi = -1, bj = -1;
            for (int i = k; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    if (e[i][j] == 0) continue;
                    if (bi < 0 || abs(e[i][j]) < abs(e[bi][bj])) {
                        bi = i;
                        bj = j;
                    }
                }
            if (bi < 0) throw std::domain_error("symplectic_reduce: form is degenerate");
            swap_cols(bj, k + 1);
            swap_cols(bi == k + 1 ? bj : bi, k);
            e = congruence(m, u);
            if (e[k][k + 1] < 0) negate_col(k + 1);
            e = congruence(m, u);
            Int p = e[k][k + 1];
            bool clean = true;
            for (int l = k + 2; l < 4; ++l) {
                Int q1 = round_div(e[k][l], p);
                if (q1 != 0) add_col(l, k + 1, -q1);
                Int q2 = round_div(congruence(m, u)[k + 1][l], p);
                if (q2 != 0) add_col(l, k, q2);
                Mat4z e2 = congruence(m, u);
                if (e2[k][l] != 0 || e2[k + 1][l] != 0) clean = false;
                e = e2;
            }
            if (clean) break;
        }
        Mat4z e = congruence(m, u);
        if (e[k][k + 1] != 1)
            throw std::domain_error("symplectic_reduce: elementary divisor != 1");
    }

    // Reorder (e1, f1, e2, f2) -> (e1, e2, f1, f2).
    swap_cols(1, 2);
    if (!is_symplectic_witness(m, u))
        throw std::logic_error("symplectic_reduce: self-verification failed");
    return u;
}

namespace {

struct CMat2 {
    CBall a, b, c, d;  // [[a, b], [c, d]]
};

CMat2 cmat_mul(const CMat2& x, const CMat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
}

CMat2 cmat_inv(const CMat2& x) {
    CBall det = x.a * x.d - x.b * x.c;
    return {x.d / det, -x.b / det, -x.c / det, x.a / det};
}

CMat2 cmat_add(const CMat2& x, const CMat2& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}

CMat2 from_period(const PeriodMatrix& om) { return {om.tau1, om.tau2, om.tau2, om.tau3}; }

CMat2 int_blocks(const Mat4z& m, int ri, int ci, mpfr_prec_t prec) {
    auto mk = [&](int i, int j) {
        return CBall(RBall::of(m[ri + i][ci + j], prec), RBall::zero(prec));
    };
    return {mk(0, 0), mk(0, 1), mk(1, 0), mk(1, 1)};
}

CMat2 cmat_int_mul(const CMat2& zi, const CMat2& x) { return cmat_mul(zi, x); }

PeriodMatrix symmetrize(const CMat2& om, const Real& tol) {
    Real res = (om.b - om.c).abs_upper().to_real(64);
    if (!(res < tol))
        throw std::domain_error("period matrix symmetry residual above tolerance (" + res.str(6) +
                                "), wrong basis ordering?");
    CBall t2 = (om.b + om.c).mul_rat(make_rat(1, 2));
    return {om.a, t2, om.d};
}

void check_positive_definite(const PeriodMatrix& om) {
    RBall y1 = om.tau1.im(), y2 = om.tau2.im(), y3 = om.tau3.im();
    if (!(y1.lower().sign() > 0) || !((y1 * y3 - y2 * y2).lower().sign() > 0))
        throw std::domain_error("period matrix: Im(Omega) not positive definite");
}

}  // namespace

PeriodMatrix period_matrix(const std::array<std::array<CBall, 4>, 2>& lattice, const Real& tol) {
    CMat2 m1{lattice[0][0], lattice[0][1], lattice[1][0], lattice[1][1]};
    CMat2 m2{lattice[0][2], lattice[0][3], lattice[1][2], lattice[1][3]};
    CMat2 om = cmat_mul(cmat_inv(m2), m1);
    om = {-om.a, -om.b, -om.c, -om.d};
    PeriodMatrix p = symmetrize(om, tol);
    check_positive_definite(p);
    return p;
}

PeriodMatrix apply_sp4(const PeriodMatrix& om, const Sp4Element& g) {
    mpfr_prec_t prec = om.tau1.prec();
    CMat2 omm = from_period(om);
    CMat2 a0 = int_blocks(g.mat(), 0, 0, prec);
    CMat2 b0 = int_blocks(g.mat(), 0, 2, prec);
    CMat2 c0 = int_blocks(g.mat(), 2, 0, prec);
    CMat2 d0 = int_blocks(g.mat(), 2, 2, prec);
    CMat2 num = cmat_add(cmat_int_mul(a0, omm), b0);
    CMat2 den = cmat_add(cmat_int_mul(c0, omm), d0);
    CMat2 img = cmat_mul(num, cmat_inv(den));
    Real tol = Real::pow2(-static_cast<long>(prec) / 2, 64);
    PeriodMatrix p = symmetrize(img, tol);
    check_positive_definite(p);
    return p;
}

Real humbert_residual(const PeriodMatrix& om) {
    return (om.tau1 - om.tau2 - om.tau3).abs_upper().to_real(64);
}

PeriodMatrix mu5(const CBall& z1, const CBall& z2) {
    mpfr_prec_t prec = std::max(z1.prec(), z2.prec());
    RBall s5 = RBall::of(Rat(5), prec).sqrt_pos();
    RBall one = RBall::of(1L, prec);
    CBall cs5 = CBall::real(s5);
    CBall inv2s5 = CBall::real(one / (s5 * 2));
    CBall t1 = (z1 * (CBall::real(one) + cs5) - z2 * (CBall::real(one) - cs5)) * inv2s5;
    CBall t2 = ((z1 - z2) * 2) * inv2s5;
    CBall t3 = (z1 * (cs5 - CBall::real(one)) + z2 * (CBall::real(one) + cs5)) * inv2s5;
    return {t1, t2, t3};
}

HilbertPoint hilbert_from_n5(const PeriodMatrix& om, const Real& tol) {
    Real res = humbert_residual(om);
    if (!(res < tol))
        throw std::domain_error("hilbert_from_n5: Humbert residual " + res.str(6) +
                                " above tolerance");
    mpfr_prec_t prec = om.tau1.prec();
    RBall s5 = RBall::of(Rat(5), prec).sqrt_pos();
    RBall one = RBall::of(1L, prec);
    RBall half = RBall::of(make_rat(1, 2), prec);
    CBall z1 = om.tau2 * CBall::real((one + s5) * half) + om.tau3;
    CBall z2 = om.tau2 * CBall::real((one - s5) * half) + om.tau3;
    if (!(z1.im().lower().sign() > 0) || !(z2.im().lower().sign() > 0))
        throw std::domain_error("hilbert_from_n5: point not in H x H");
    return {z1, z2};
}

namespace {

// Fast double-precision residual used to steer the search; every accepted
// gamma is re-verified in ball arithmetic afterwards.
double residual_d(const std::array<std::complex<double>, 3>& om, const Mat4z& g) {
    using cd = std::complex<double>;
    auto gv = [&](int i, int j) { return cd(g[i][j].get_d(), 0.0); };
    cd t1 = om[0], t2 = om[1], t3 = om[2];
    cd n11 = gv(0, 0) * t1 + gv(0, 1) * t2 + gv(0, 2);
    cd n12 = gv(0, 0) * t2 + gv(0, 1) * t3 + gv(0, 3);
    cd n21 = gv(1, 0) * t1 + gv(1, 1) * t2 + gv(1, 2);
    cd n22 = gv(1, 0) * t2 + gv(1, 1) * t3 + gv(1, 3);
    cd d11 = gv(2, 0) * t1 + gv(2, 1) * t2 + gv(2, 2);
    cd d12 = gv(2, 0) * t2 + gv(2, 1) * t3 + gv(2, 3);
    cd d21 = gv(3, 0) * t1 + gv(3, 1) * t2 + gv(3, 2);
    cd d22 = gv(3, 0) * t2 + gv(3, 1) * t3 + gv(3, 3);
    cd det = d11 * d22 - d12 * d21;
    if (std::abs(det) < 1e-300) return 1e300;
    cd i11 = d22 / det, i12 = -d12 / det, i21 = -d21 / det, i22 = d11 / det;
    cd m11 = n11 * i11 + n12 * i21;
    cd m12 = n11 * i12 + n12 * i22;
    cd m21 = n21 * i11 + n22 * i21;
    cd m22 = n21 * i12 + n22 * i22;
    return std::abs(m11 - (m12 + m21) * 0.5 - m22);
}

std::string mat_key(const Mat4z& m) {
    // gamma and -gamma act identically; canonicalize the sign.
    int sign = 0;
    for (const auto& row : m)
        for (const auto& e : row) {
            if (e != 0) {
                sign = sgn(e);
                goto done;
            }
        }
done:
    std::ostringstream os;
    for (const auto& row : m)
        for (const auto& e : row) os << (sign < 0 ? Int(-e) : e).get_str() << ',';
    return os.str();
}

std::vector<Sp4Element> generator_set() {
    using M2 = std::array<std::array<long, 2>, 2>;
    const M2 id{{{1, 0}, {0, 1}}};
    const M2 zero{{{0, 0}, {0, 0}}};
    const M2 nid{{{-1, 0}, {0, -1}}};
    std::vector<Sp4Element> gens;
    auto trans = [&](long s11, long s12, long s22) {
        return Sp4Element::from_blocks(id, {{{s11, s12}, {s12, s22}}}, zero, id);
    };
    gens.push_back(trans(1, 0, 0));
    gens.push_back(trans(-1, 0, 0));
    gens.push_back(trans(0, 0, 1));
    gens.push_back(trans(0, 0, -1));
    gens.push_back(trans(0, 1, 0));
    gens.push_back(trans(0, -1, 0));
    gens.push_back(Sp4Element::from_blocks(zero, nid, id, zero));  // inversion
    auto gl = [&](long a, long b, long c, long d) {
        // [[U, 0], [0, U^{-T}]] for U = [[a, b], [c, d]] with det +-1
        long det = a * d - b * c;
        M2 u{{{a, b}, {c, d}}};
        M2 uinvt{{{d / det, -c / det}, {-b / det, a / det}}};
        return Sp4Element::from_blocks(u, zero, zero, uinvt);
    };
    gens.push_back(gl(0, 1, 1, 0));   // swap
    gens.push_back(gl(1, 1, 0, 1));   // shear
    gens.push_back(gl(1, -1, 0, 1));  // inverse shear
    gens.push_back(gl(1, 0, 0, -1));  // reflection
    return gens;
}

}  // namespace

N5Result normalize_to_n5(const PeriodMatrix& om, int depth, const Real& tol,
                         const std::optional<Sp4Element>& user_gamma, long node_cap) {
    N5Result out;
    out.best_residual = Real::of(1, 64);

    auto verify = [&](const Sp4Element& g) -> bool {
        PeriodMatrix img = apply_sp4(om, g);
        Real res = humbert_residual(img);
        if (res < out.best_residual) {
            out.best_residual = res;
            out.gamma = g;
        }
        if (res < tol) {
            out.ok = true;
            out.omega = img;
            out.gamma = g;
            return true;
        }
        return false;
    };

    if (user_gamma) {
        try {
            verify(*user_gamma);
        } catch (const std::domain_error&) {
            out.ok = false;
        }
        return out;
    }

    std::array<std::complex<double>, 3> omd = {
        std::complex<double>(om.tau1.re().mid().to_double(), om.tau1.im().mid().to_double()),
        std::complex<double>(om.tau2.re().mid().to_double(), om.tau2.im().mid().to_double()),
        std::complex<double>(om.tau3.re().mid().to_double(), om.tau3.im().mid().to_double())};
    const double coarse_tol = 1e-9;

    std::vector<Sp4Element> gens = generator_set();
    std::deque<std::pair<Sp4Element, int>> queue;
    std::unordered_set<std::string> seen;
    queue.emplace_back(Sp4Element::identity(), 0);
    seen.insert(mat_key(Sp4Element::identity().mat()));

    double best_coarse = 1e301;
    Sp4Element best_coarse_gamma;
    while (!queue.empty()) {
        auto [g, d] = queue.front();
        queue.pop_front();
        ++out.nodes_explored;
        double rd = residual_d(omd, g.mat());
        if (rd < best_coarse) {
            best_coarse = rd;
            best_coarse_gamma = g;
        }
        if (rd < coarse_tol) {
            try {
                if (verify(g)) return out;
            } catch (const std::domain_error&) {
                // singular or indefinite image; keep searching
            }
        }
        if (d >= depth || out.nodes_explored > node_cap) continue;
        for (const auto& gen : gens) {
            Sp4Element next = gen * g;
            std::string key = mat_key(next.mat());
            if (seen.insert(std::move(key)).second) queue.emplace_back(std::move(next), d + 1);
        }
    }
    // Exhausted: report the rigorous residual of the best candidate seen.
    if (best_coarse < 1e300) {
        try {
            verify(best_coarse_gamma);
        } catch (const std::domain_error&) {
        }
    }
    return out;
}

}  // namespace kleincm
