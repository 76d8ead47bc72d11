#include "kleincm/pipeline.hpp"

#include <stdexcept>

namespace kleincm {

namespace {

Real pipeline_tol(const PipelineConfig& cfg) {
    long e = cfg.tol_exp > 0 ? cfg.tol_exp : static_cast<long>(cfg.precision) / 2;
    return Real::pow2(-e, 64);
}

std::array<std::array<CBall, 4>, 2> embed_lattice(const std::array<QuartElem, 4>& basis,
                                                  const Mat4z& u, mpfr_prec_t prec) {
    std::array<std::array<CBall, 4>, 2> lattice;
    for (int j = 0; j < 4; ++j) {
        QuartElem lam = QuartElem{basis[0].spec(), 0, 0, 0, 0};
        for (int i = 0; i < 4; ++i) {
            lam = lam + basis[static_cast<size_t>(i)].scale(
                            Rat(u[static_cast<size_t>(i)][static_cast<size_t>(j)]));
        }
        lattice[0][static_cast<size_t>(j)] = embed(lam, EmbeddingLabel::id, prec);
        lattice[1][static_cast<size_t>(j)] = embed(lam, EmbeddingLabel::sigma, prec);
    }
    return lattice;
}

template <typename HighPrecEval>
RecognizedOut recognize_value(const CBall& value, bool is_x, const PipelineConfig& cfg,
                              HighPrecEval&& high_prec_eval) {
    RecognizedOut out;
    mpfr_prec_t prec = cfg.precision;
    Real im_small = Real::pow2(-static_cast<long>(prec) / 4, 64);
    bool as_real = value.im().contains_zero() && value.im().abs_upper().to_real(64) < im_small;
    out.treated_as_real = as_real;

    RecognitionRequest req;
    req.value = value;
    req.expect_real = as_real;
    req.max_degree = cfg.recog_max_degree;
    req.height_bits = cfg.recog_height_bits;
    req.prec = prec;
    auto cand = min_poly(req);
    if (!cand) return out;
    out.found = true;
    out.degree = cand->degree();
    out.poly = cand->str();
    for (const Int& c : cand->coeffs) out.coeffs.push_back(c.get_str());
    out.residual = cand->residual.str(8);

    // Re-verify against the value recomputed at doubled precision.
    const CmEvaluation& ev2 = high_prec_eval();
    const CBall& v2 = is_x ? ev2.xy.x : ev2.xy.y;
    Real res2 = verify_poly(*cand, v2, prec * 2);
    out.verify_residual = res2.str(8);
    out.verified = cand->verified;
    return out;
}

}  // namespace

ComplexOut complex_out(const CBall& v) {
    ComplexOut o;
    o.re = v.re().mid().str();
    o.im = v.im().mid().str();
    o.err = v.rad_upper().to_real(64).str(6);
    return o;
}

CmEvaluation evaluate_cm_point(const CMFieldSpec& spec, const Mat4z& basis_change,
                               const Sp4Element& gamma, mpfr_prec_t precision, const Real& tol) {
    auto basis = integral_basis(spec);
    auto lattice = embed_lattice(basis, basis_change, precision);
    Real sym_tol = Real::pow2(-static_cast<long>(precision) / 2, 64);
    PeriodMatrix omega = period_matrix(lattice, sym_tol);
    N5Result n5 = normalize_to_n5(omega, 0, tol, gamma);
    if (!n5.ok)
        throw std::domain_error("evaluate_cm_point: gamma does not reach the N5 locus "
                                "(residual " + n5.best_residual.str(6) + ")");
    CmEvaluation ev;
    ev.omega_n5 = n5.omega;
    ev.z = hilbert_from_n5(n5.omega, tol);
    ev.forms = eval_forms(ev.z, precision);
    ev.xy = eval_xy(ev.forms);
    ev.canonical = canonical_point(ev.forms);
    return ev;
}

Report run_pipeline(const CMFieldSpec& spec, const PipelineConfig& cfg) {
    Report rep;
    rep.field = spec;
    rep.precision_bits = static_cast<long>(cfg.precision);
    Real tol = pipeline_tol(cfg);

    auto fail = [&](const std::string& stage, const std::string& what) -> Report& {
        rep.error = stage + ": " + what;
        return rep;
    };

    // Field classification and invariants.
    CaseLabel label;
    try {
        validate_spec(spec, /*require_cm=*/true);
        label = classify(spec);
        rep.case_label = to_string(label);
        FieldInvariants inv = field_invariants(spec);
        rep.conductor = inv.conductor.get_str();
        rep.discriminant = inv.discriminant.get_str();
    } catch (const std::exception& e) {
        fail("validate", e.what());
        return rep;
    }

    // Polarization, Gram matrix, Pfaffian.
    std::array<QuartElem, 4> basis;
    IntSkewMatrix4 gram;
    try {
        basis = integral_basis(spec);
        PolarizationSpec pol = zeta_principal(spec);
        gram = riemann_gram(basis, pol);
        auto closed = gram_closed_form(spec, pol.kappa);
        bool match = true;
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                match &= (Rat(gram[static_cast<size_t>(j)][static_cast<size_t>(k)]) ==
                          closed[static_cast<size_t>(j)][static_cast<size_t>(k)]);
        rep.checks.push_back({"gram_closed_form_match", match, "0"});
        for (const auto& row : gram) {
            std::vector<std::string> r;
            for (const Int& e : row) r.push_back(e.get_str());
            rep.gram.push_back(std::move(r));
        }
        Int pf = pfaffian(gram);
        rep.pfaffian_value = pf.get_str();
        rep.checks.push_back({"pfaffian_principal", pf == 1, pf.get_str()});
        if (pf != 1) {
            fail("polarization", "Pfaffian != 1");
            return rep;
        }
    } catch (const std::exception& e) {
        fail("polarization", e.what());
        return rep;
    }

    // Symplectic basis (witness or computed), period matrix.
    Mat4z u;
    PeriodMatrix omega;
    try {
        if (cfg.basis_change) {
            u = *cfg.basis_change;
            if (!is_symplectic_witness(gram, u)) {
                fail("symplectic", "supplied basis change is not a symplectic witness");
                return rep;
            }
        } else {
            u = symplectic_reduce(gram);
        }
        rep.checks.push_back({"symplectic_witness", is_symplectic_witness(gram, u), "0"});
        for (const auto& row : u)
            for (const Int& e : row) rep.basis_change_used.push_back(e.get_str());
        auto lattice = embed_lattice(basis, u, cfg.precision);
        Real sym_tol = Real::pow2(-static_cast<long>(cfg.precision) / 2, 64);
        omega = period_matrix(lattice, sym_tol);
    } catch (const std::exception& e) {
        fail("period", e.what());
        return rep;
    }

    // Carry Omega into the N5 locus.
    N5Result n5;
    try {
        n5 = normalize_to_n5(omega, cfg.depth, tol, cfg.gamma, cfg.node_cap);
        rep.gamma_from_search = !cfg.gamma.has_value();
        for (const Int& e : n5.gamma.flat()) rep.gamma_used.push_back(e.get_str());
        rep.humbert_residual = n5.best_residual.str(8);
        rep.checks.push_back({"humbert_residual", n5.ok, n5.best_residual.str(8)});
        if (!n5.ok) {
            fail("normalize", "no gamma reaching N5 within depth " + std::to_string(cfg.depth) +
                                  "; best residual " + n5.best_residual.str(6) +
                                  " (supply gamma)");
            return rep;
        }
        rep.tau1 = complex_out(n5.omega.tau1);
        rep.tau2 = complex_out(n5.omega.tau2);
        rep.tau3 = complex_out(n5.omega.tau3);
    } catch (const std::exception& e) {
        fail("normalize", e.what());
        return rep;
    }

    // CM point, forms, X, Y, identity checks.
    try {
        HilbertPoint z = hilbert_from_n5(n5.omega, tol);
        rep.z1 = complex_out(z.z1);
        rep.z2 = complex_out(z.z2);
        FormValues forms = eval_forms(z, cfg.precision);
        XYValue xy = eval_xy(forms);
        rep.x_value = complex_out(xy.x);
        rep.y_value = complex_out(xy.y);
        CanonicalPoint cp = canonical_point(forms);
        IcosahedralPoint ip = icosahedral_point(forms);
        Real kres = klein_residual(cp);
        Real cres = cover_residual(cp, ip);
        rep.klein_residual = kres.str(8);
        rep.cover_residual = cres.str(8);
        rep.checks.push_back({"klein_identity", kres < tol, kres.str(8)});
        rep.checks.push_back({"cover_identity", cres < tol, cres.str(8)});

        if (cfg.run_recognition) {
            // The doubled-precision chain is shared by both verifications.
            std::optional<CmEvaluation> ev2;
            auto high_prec_eval = [&]() -> const CmEvaluation& {
                if (!ev2) ev2 = evaluate_cm_point(spec, u, n5.gamma, cfg.precision * 2, tol);
                return *ev2;
            };
            rep.x_recognized = recognize_value(xy.x, true, cfg, high_prec_eval);
            rep.y_recognized = recognize_value(xy.y, false, cfg, high_prec_eval);
            rep.checks.push_back({"recognition_x_verified",
                                  rep.x_recognized->found && rep.x_recognized->verified,
                                  rep.x_recognized->found ? rep.x_recognized->verify_residual
                                                          : "not recognized"});
            rep.checks.push_back({"recognition_y_verified",
                                  rep.y_recognized->found && rep.y_recognized->verified,
                                  rep.y_recognized->found ? rep.y_recognized->verify_residual
                                                          : "not recognized"});
        }
    } catch (const std::exception& e) {
        fail("evaluate", e.what());
        return rep;
    }

    // Galois structure from the supplied class-group shape.
    if (cfg.class_group) {
        try {
            GaloisResult g = galois_structure(*cfg.class_group);
            std::vector<std::string> q;
            for (const Int& n : g.quotient) q.push_back(n.get_str());
            rep.galois_quotient = q;
            rep.galois_degree = g.degree.get_str();
            Int check = g.degree * (Int(1) << static_cast<unsigned long>(cfg.class_group->r()));
            rep.checks.push_back(
                {"galois_order", check == cfg.class_group->class_number(), check.get_str()});
        } catch (const std::exception& e) {
            fail("galois", e.what());
            return rep;
        }
    }
    return rep;
}

}  // namespace kleincm
