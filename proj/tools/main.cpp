#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "kleincm/igusa.hpp"
#include "kleincm/pipeline.hpp"
#include "kleincm/surfaces.hpp"

using json = nlohmann::json;
using namespace kleincm;

namespace {

struct GlobalOpts {
    long precision = 128;
    long tol_exp = 0;
    int depth = 8;
    std::string gamma_str;
    std::string spec_path;
    std::string out_path;
    std::string format = "json";
};

std::vector<long> parse_longs(const std::string& s) {
    std::vector<long> out;
    std::string token;
    std::istringstream is(s);
    while (std::getline(is, token, ',')) {
        if (token.empty()) continue;
        out.push_back(std::stol(token));
    }
    return out;
}

std::vector<Rat> parse_rats(const std::string& s) {
    std::vector<Rat> out;
    std::string token;
    std::istringstream is(s);
    while (std::getline(is, token, ',')) {
        if (token.empty()) continue;
        Rat q(token);
        q.canonicalize();
        out.push_back(q);
    }
    return out;
}

Mat4z parse_mat16(const std::vector<long>& v) {
    if (v.size() != 16) throw std::invalid_argument("expected 16 integers row-major");
    Mat4z m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m[static_cast<size_t>(i)][static_cast<size_t>(j)] = v[static_cast<size_t>(i) * 4 +
                                                                  static_cast<size_t>(j)];
    return m;
}

struct SpecFile {
    std::optional<CMFieldSpec> field;
    std::optional<ClassGroupShape> class_group;
    std::optional<Sp4Element> gamma;
    std::optional<Mat4z> basis_change;
};

SpecFile load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec file " + path);
    json j;
    in >> j;
    SpecFile out;
    if (j.contains("A")) {
        out.field = CMFieldSpec{j.at("A").get<long>(), j.at("B").get<long>(),
                                j.at("C").get<long>(), j.at("Delta").get<long>()};
    }
    if (j.contains("class_group")) {
        ClassGroupShape shape;
        for (const auto& v : j["class_group"].value("two_part", json::array()))
            shape.two_part.push_back(v.get<long>());
        for (const auto& v : j["class_group"].value("odd_part", json::array()))
            shape.odd_part.push_back(Int(v.get<long>()));
        out.class_group = shape;
    }
    if (j.contains("gamma")) {
        std::vector<long> v = j["gamma"].get<std::vector<long>>();
        out.gamma = Sp4Element(parse_mat16(v));
    }
    if (j.contains("basis_change")) {
        std::vector<long> v = j["basis_change"].get<std::vector<long>>();
        out.basis_change = parse_mat16(v);
    }
    return out;
}

CMFieldSpec resolve_field(const GlobalOpts& g, const std::optional<CMFieldSpec>& flags) {
    if (!g.spec_path.empty()) {
        SpecFile f = load_spec(g.spec_path);
        if (f.field) return *f.field;
    }
    if (flags) return *flags;
    throw std::runtime_error("no field spec: pass --spec file.json or -A -B -C --delta");
}

void emit(const GlobalOpts& g, const json& j, const std::string& text) {
    std::string payload = (g.format == "text") ? text : j.dump(2);
    if (g.out_path.empty()) {
        std::cout << payload << std::endl;
    } else {
        std::ofstream out(g.out_path);
        out << payload << std::endl;
    }
}

json complex_json(const CBall& v) {
    return json{{"re", v.re().mid().str()},
                {"im", v.im().mid().str()},
                {"err", v.rad_upper().to_real(64).str(6)}};
}

CBall parse_complex(const std::string& s, mpfr_prec_t prec) {
    auto comma = s.find(',');
    std::string re = comma == std::string::npos ? s : s.substr(0, comma);
    std::string im = comma == std::string::npos ? "0" : s.substr(comma + 1);
    return CBall(RBall(Real::from_str(re, prec), Mag::ulp(Real::from_str(re, prec))),
                 RBall(Real::from_str(im, prec), Mag::ulp(Real::from_str(im, prec))));
}

int run(int argc, char** argv) {
    CLI::App app{"CM points on the Hilbert modular surface for Q(sqrt 5): theta constants, "
                 "icosahedral invariants, algebraic recognition"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--precision", g.precision, "working precision in bits (>= 53)")
        ->default_val(128);
    app.add_option("--tol-exp", g.tol_exp, "residual tolerance 2^-n (default precision/2)");
    app.add_option("--depth", g.depth, "Sp(4,Z) search depth")->default_val(8);
    app.add_option("--gamma", g.gamma_str, "N5 witness matrix, 16 integers row-major");
    app.add_option("--spec", g.spec_path, "JSON spec file");
    app.add_option("--out", g.out_path, "output path (default stdout)");
    app.add_option("--format", g.format, "json|text")->default_val("json");

    long fa = 0, fb = 0, fc = 0, fd = 0;
    bool have_flags = false;
    auto add_field_flags = [&](CLI::App* cmd) {
        cmd->add_option("-A", fa)->each([&](const std::string&) { have_flags = true; });
        cmd->add_option("-B", fb);
        cmd->add_option("-C", fc);
        cmd->add_option("-D,--delta", fd);
    };
    auto field = [&]() -> CMFieldSpec {
        std::optional<CMFieldSpec> flags;
        if (have_flags) flags = CMFieldSpec{fa, fb, fc, fd};
        return resolve_field(g, flags);
    };

    auto* c_classify = app.add_subcommand("classify", "validate a spec and print its case");
    add_field_flags(c_classify);
    auto* c_inv = app.add_subcommand("invariants", "conductor and discriminant");
    add_field_flags(c_inv);
    auto* c_basis = app.add_subcommand("basis", "integral basis in the {1, sqrt(D), alpha, beta} "
                                                "coordinates");
    add_field_flags(c_basis);
    auto* c_gram = app.add_subcommand("gram", "Riemann-form Gram matrix and Pfaffian");
    add_field_flags(c_gram);
    std::string kappa_str;
    c_gram->add_option("--kappa", kappa_str, "override kappa (rational, e.g. 20 or 20/3)");
    auto* c_period = app.add_subcommand("period", "period matrix of the reduced symplectic basis");
    add_field_flags(c_period);
    auto* c_cm = app.add_subcommand("cm-point", "normalized period matrix and CM point (z1, z2)");
    add_field_flags(c_cm);

    auto* c_xy = app.add_subcommand("eval-xy", "X, Y at a point of H x H");
    std::string z1s, z2s;
    c_xy->add_option("--z1", z1s, "z1 as re,im")->required();
    c_xy->add_option("--z2", z2s, "z2 as re,im")->required();
    auto* c_klein = app.add_subcommand("klein-check", "Klein relation residual at a point");
    c_klein->add_option("--z1", z1s, "z1 as re,im")->required();
    c_klein->add_option("--z2", z2s, "z2 as re,im")->required();

    auto* c_igusa = app.add_subcommand("igusa", "Igusa-Clebsch chain for a rational sextic");
    std::string roots_str, u0_str = "1";
    c_igusa->add_option("--roots", roots_str, "six rational roots, comma separated")->required();
    c_igusa->add_option("--u0", u0_str, "leading coefficient");

    auto* c_rec = app.add_subcommand("recognize", "recognize a numeric value as algebraic");
    std::string re_str, im_str = "0";
    int max_degree = 8;
    long height_bits = 256;
    bool expect_real = false;
    c_rec->add_option("--re", re_str)->required();
    c_rec->add_option("--im", im_str);
    c_rec->add_option("--max-degree", max_degree)->default_val(8);
    c_rec->add_option("--height-bits", height_bits)->default_val(256);
    c_rec->add_flag("--expect-real", expect_real);

    auto* c_galois = app.add_subcommand("galois", "Galois structure of K(X,Y)/K from the class "
                                                  "group shape");
    std::string two_part_str, odd_part_str;
    c_galois->add_option("--two-part", two_part_str, "multiplicities r1,r2,... of Z/2^j");
    c_galois->add_option("--odd-part", odd_part_str, "odd cyclic orders");

    auto* c_surf = app.add_subcommand("emit-surface", "defining polynomial of S, K or CD");
    std::string kind_str, params_str;
    c_surf->add_option("--kind", kind_str, "S|K|CD")->required();
    c_surf->add_option("--params", params_str, "rational parameters, comma separated")
        ->required();

    auto* c_pipe = app.add_subcommand("pipeline", "full field-to-class-field pipeline");
    add_field_flags(c_pipe);
    bool no_recognition = false;
    int recog_degree = 8;
    long recog_height = 512;
    c_pipe->add_flag("--no-recognition", no_recognition, "skip algebraic recognition");
    c_pipe->add_option("--recog-max-degree", recog_degree)->default_val(8);
    c_pipe->add_option("--recog-height-bits", recog_height)->default_val(512);

    CLI11_PARSE(app, argc, argv);

    if (g.precision < 53) throw std::runtime_error("--precision must be >= 53");
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(g.precision);
    Real tol = Real::pow2(-(g.tol_exp > 0 ? g.tol_exp : g.precision / 2), 64);

    if (c_classify->parsed()) {
        CMFieldSpec s = field();
        CaseLabel l = classify(s);
        emit(g, json{{"A", s.A}, {"B", s.B}, {"C", s.C}, {"Delta", s.Delta},
                     {"case", to_string(l)}},
             "case: (" + to_string(l) + ")");
    } else if (c_inv->parsed()) {
        CMFieldSpec s = field();
        FieldInvariants f = field_invariants(s);
        emit(g,
             json{{"case", to_string(classify(s))},
                  {"conductor", f.conductor.get_str()},
                  {"discriminant", f.discriminant.get_str()}},
             "conductor: " + f.conductor.get_str() +
                 "\ndiscriminant: " + f.discriminant.get_str());
    } else if (c_basis->parsed()) {
        CMFieldSpec s = field();
        auto basis = integral_basis(s);
        json arr = json::array();
        std::string text;
        for (const auto& e : basis) {
            json coords = json::array();
            for (int i = 0; i < 4; ++i) coords.push_back(e.coeff(i).get_str());
            arr.push_back(coords);
            text += e.str() + "\n";
        }
        emit(g, json{{"basis", arr}}, text);
    } else if (c_gram->parsed()) {
        CMFieldSpec s = field();
        PolarizationSpec pol;
        if (kappa_str.empty()) {
            pol = zeta_principal(s);
        } else {
            Rat kappa(kappa_str);
            kappa.canonicalize();
            pol = PolarizationSpec{QuartElem::alpha(s).scale(Rat(1) / kappa), kappa};
        }
        IntSkewMatrix4 m = riemann_gram(integral_basis(s), pol);
        json rows = json::array();
        std::string text;
        for (const auto& row : m) {
            json r = json::array();
            for (const Int& e : row) {
                r.push_back(e.get_str());
                text += e.get_str() + " ";
            }
            rows.push_back(r);
            text += "\n";
        }
        Int pf = pfaffian(m);
        text += "pfaffian: " + pf.get_str() + "\n";
        emit(g, json{{"kappa", pol.kappa.get_str()}, {"gram", rows},
                     {"pfaffian", pf.get_str()}},
             text);
    } else if (c_period->parsed()) {
        CMFieldSpec s = field();
        std::optional<Mat4z> basis_change;
        if (!g.spec_path.empty()) basis_change = load_spec(g.spec_path).basis_change;
        auto basis = integral_basis(s);
        IntSkewMatrix4 gram = riemann_gram(basis, zeta_principal(s));
        Mat4z u = basis_change ? *basis_change : symplectic_reduce(gram);
        if (basis_change && !is_symplectic_witness(gram, u))
            throw std::runtime_error("basis_change is not a symplectic witness for this form");
        std::array<std::array<CBall, 4>, 2> lattice;
        for (int j = 0; j < 4; ++j) {
            QuartElem lam{s, 0, 0, 0, 0};
            for (int i = 0; i < 4; ++i)
                lam = lam + basis[static_cast<size_t>(i)].scale(
                                Rat(u[static_cast<size_t>(i)][static_cast<size_t>(j)]));
            lattice[0][static_cast<size_t>(j)] = embed(lam, EmbeddingLabel::id, prec);
            lattice[1][static_cast<size_t>(j)] = embed(lam, EmbeddingLabel::sigma, prec);
        }
        PeriodMatrix om = period_matrix(lattice, tol);
        emit(g,
             json{{"tau1", complex_json(om.tau1)},
                  {"tau2", complex_json(om.tau2)},
                  {"tau3", complex_json(om.tau3)}},
             "tau1: " + om.tau1.str() + "\ntau2: " + om.tau2.str() +
                 "\ntau3: " + om.tau3.str());
    } else if (c_cm->parsed() || c_pipe->parsed()) {
        CMFieldSpec s = field();
        PipelineConfig cfg;
        cfg.precision = prec;
        cfg.tol_exp = g.tol_exp;
        cfg.depth = g.depth;
        if (!g.gamma_str.empty()) cfg.gamma = Sp4Element(parse_mat16(parse_longs(g.gamma_str)));
        if (!g.spec_path.empty()) {
            SpecFile f = load_spec(g.spec_path);
            if (f.gamma && !cfg.gamma) cfg.gamma = f.gamma;
            cfg.basis_change = f.basis_change;
            cfg.class_group = f.class_group;
        }
        if (c_pipe->parsed()) {
            cfg.run_recognition = !no_recognition;
            cfg.recog_max_degree = recog_degree;
            cfg.recog_height_bits = recog_height;
        } else {
            cfg.run_recognition = false;
        }
        Report rep = run_pipeline(s, cfg);
        emit(g, json::parse(report_to_json(rep)), report_to_text(rep));
        if (rep.error) return 1;
    } else if (c_xy->parsed() || c_klein->parsed()) {
        HilbertPoint z{parse_complex(z1s, prec), parse_complex(z2s, prec)};
        FormValues f = eval_forms(z, prec);
        if (c_xy->parsed()) {
            XYValue xy = eval_xy(f);
            emit(g, json{{"X", complex_json(xy.x)}, {"Y", complex_json(xy.y)}},
                 "X: " + xy.x.str() + "\nY: " + xy.y.str());
        } else {
            CanonicalPoint cp = canonical_point(f);
            IcosahedralPoint ip = icosahedral_point(f);
            Real kres = klein_residual(cp);
            Real cres = cover_residual(cp, ip);
            bool pass = kres < tol && cres < tol;
            emit(g,
                 json{{"klein_residual", kres.str(8)},
                      {"cover_residual", cres.str(8)},
                      {"pass", pass}},
                 "klein residual: " + kres.str(8) + "\ncover residual: " + cres.str(8));
        }
    } else if (c_igusa->parsed()) {
        std::vector<Rat> roots = parse_rats(roots_str);
        Rat u0(u0_str);
        u0.canonicalize();
        IgusaClebsch ic = igusa_clebsch(roots, u0);
        auto [jv, mv] = invariants_chain(ic);
        CDPoint cd = cd_from_i(ic);
        json out{{"I2", ic.i2.get_str()},   {"I4", ic.i4.get_str()},
                 {"I6", ic.i6.get_str()},   {"I10", ic.i10.get_str()},
                 {"J2", jv.j2.get_str()},   {"J4", jv.j4.get_str()},
                 {"J6", jv.j6.get_str()},   {"J10", jv.j10.get_str()},
                 {"m1", mv.m1.get_str()},   {"m2", mv.m2.get_str()},
                 {"m3", mv.m3.get_str()},   {"alpha", cd.alpha.get_str()},
                 {"beta", cd.beta.get_str()}, {"gamma", cd.gamma.get_str()},
                 {"delta", cd.delta.get_str()}};
        emit(g, out, out.dump(2));
    } else if (c_rec->parsed()) {
        RecognitionRequest req;
        req.value = CBall(RBall(Real::from_str(re_str, prec)),
                          RBall(Real::from_str(im_str, prec)));
        req.expect_real = expect_real;
        req.max_degree = max_degree;
        req.height_bits = height_bits;
        req.prec = prec;
        auto cand = min_poly(req);
        if (!cand) {
            emit(g, json{{"found", false}}, "not recognized");
        } else {
            json coeffs = json::array();
            for (const Int& c : cand->coeffs) coeffs.push_back(c.get_str());
            emit(g,
                 json{{"found", true},
                      {"degree", cand->degree()},
                      {"coeffs", coeffs},
                      {"poly", cand->str()},
                      {"residual", cand->residual.str(8)}},
                 cand->str());
        }
    } else if (c_galois->parsed()) {
        ClassGroupShape shape;
        if (!g.spec_path.empty()) {
            SpecFile f = load_spec(g.spec_path);
            if (f.class_group) shape = *f.class_group;
        }
        if (!two_part_str.empty()) {
            shape.two_part = parse_longs(two_part_str);
        }
        if (!odd_part_str.empty()) {
            shape.odd_part.clear();
            for (long n : parse_longs(odd_part_str)) shape.odd_part.push_back(Int(n));
        }
        GaloisResult r = galois_structure(shape);
        LemmaQuantities q = lemma_quantities(shape);
        json quot = json::array();
        std::string text = "degree: " + r.degree.get_str() + "\nquotient:";
        for (const Int& n : r.quotient) {
            quot.push_back(n.get_str());
            text += " Z/" + n.get_str();
        }
        emit(g,
             json{{"h", shape.class_number().get_str()},
                  {"degree", r.degree.get_str()},
                  {"quotient", quot},
                  {"epsilon", q.epsilon},
                  {"beta", q.beta},
                  {"eta", q.eta},
                  {"gamma", q.gamma},
                  {"r", q.r},
                  {"index_I_KK0_PK", q.index_i_kk0_pk.get_str()}},
             text);
    } else if (c_surf->parsed()) {
        SurfaceKind kind;
        if (kind_str == "S") kind = SurfaceKind::S;
        else if (kind_str == "K") kind = SurfaceKind::K;
        else if (kind_str == "CD") kind = SurfaceKind::CD;
        else throw std::runtime_error("--kind must be S, K or CD");
        SparsePoly p = emit_equation(kind, parse_rats(params_str));
        json terms = json::array();
        for (const auto& [e, c] : p.terms()) {
            json t{{"coeff", c.get_str()}, {"exps", e}};
            terms.push_back(t);
        }
        emit(g, json{{"vars", p.vars()}, {"equation", p.str() + " = 0"}, {"terms", terms}},
             p.str() + " = 0");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << std::endl;
        return 1;
    }
}
