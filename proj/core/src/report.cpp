#include <json.hpp>

#include <sstream>

#include "kleincm/pipeline.hpp"

namespace kleincm {

namespace {

using nlohmann::json;

json complex_json(const ComplexOut& c) {
    return json{{"re", c.re}, {"im", c.im}, {"err", c.err}};
}

json recognized_json(const RecognizedOut& r) {
    json j;
    j["found"] = r.found;
    if (r.found) {
        j["degree"] = r.degree;
        j["coeffs"] = r.coeffs;
        j["poly"] = r.poly;
        j["residual"] = r.residual;
        j["verify_residual"] = r.verify_residual;
        j["verified"] = r.verified;
        j["treated_as_real"] = r.treated_as_real;
    }
    return j;
}

}  // namespace

std::string report_to_json(const Report& r, int indent) {
    json j;
    j["schema"] = r.schema;
    j["field"] = json{{"A", r.field.A}, {"B", r.field.B}, {"C", r.field.C},
                      {"Delta", r.field.Delta}};
    j["precision"] = r.precision_bits;
    if (!r.case_label.empty()) j["case"] = r.case_label;
    if (!r.conductor.empty()) j["conductor"] = r.conductor;
    if (!r.discriminant.empty()) j["discriminant"] = r.discriminant;
    if (!r.gram.empty()) j["gram"] = r.gram;
    if (!r.pfaffian_value.empty()) j["pfaffian"] = r.pfaffian_value;
    if (!r.basis_change_used.empty()) j["basis_change"] = r.basis_change_used;
    if (!r.gamma_used.empty()) {
        j["gamma"] = r.gamma_used;
        j["gamma_from_search"] = r.gamma_from_search;
    }
    if (r.tau1) {
        j["period_matrix"] = json{{"tau1", complex_json(*r.tau1)},
                                  {"tau2", complex_json(*r.tau2)},
                                  {"tau3", complex_json(*r.tau3)}};
    }
    if (!r.humbert_residual.empty()) j["humbert_residual"] = r.humbert_residual;
    if (r.z1) j["z1"] = complex_json(*r.z1);
    if (r.z2) j["z2"] = complex_json(*r.z2);
    if (r.x_value) j["X"] = complex_json(*r.x_value);
    if (r.y_value) j["Y"] = complex_json(*r.y_value);
    if (!r.klein_residual.empty()) j["klein_residual"] = r.klein_residual;
    if (!r.cover_residual.empty()) j["cover_residual"] = r.cover_residual;
    if (r.x_recognized) j["X_recognized"] = recognized_json(*r.x_recognized);
    if (r.y_recognized) j["Y_recognized"] = recognized_json(*r.y_recognized);
    if (r.galois_quotient) {
        j["galois"] = json{{"quotient", *r.galois_quotient}, {"degree", *r.galois_degree}};
    }
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}});
    j["checks"] = checks;
    if (r.error) j["error"] = *r.error;
    return indent > 0 ? j.dump(indent) : j.dump();
}

std::string report_to_text(const Report& r) {
    std::ostringstream os;
    os << "field: A=" << r.field.A << " B=" << r.field.B << " C=" << r.field.C
       << " Delta=" << r.field.Delta << "\n";
    if (!r.case_label.empty()) os << "case: (" << r.case_label << ")\n";
    if (!r.conductor.empty())
        os << "conductor: " << r.conductor << "  discriminant: " << r.discriminant << "\n";
    if (!r.pfaffian_value.empty()) os << "pfaffian: " << r.pfaffian_value << "\n";
    if (r.tau1) {
        os << "tau1: " << r.tau1->re << " + " << r.tau1->im << " i\n";
        os << "tau2: " << r.tau2->re << " + " << r.tau2->im << " i\n";
        os << "tau3: " << r.tau3->re << " + " << r.tau3->im << " i\n";
    }
    if (!r.humbert_residual.empty()) os << "humbert residual: " << r.humbert_residual << "\n";
    if (r.z1) {
        os << "z1: " << r.z1->re << " + " << r.z1->im << " i\n";
        os << "z2: " << r.z2->re << " + " << r.z2->im << " i\n";
    }
    if (r.x_value) {
        os << "X: " << r.x_value->re << " + " << r.x_value->im << " i (err " << r.x_value->err
           << ")\n";
        os << "Y: " << r.y_value->re << " + " << r.y_value->im << " i (err " << r.y_value->err
           << ")\n";
    }
    if (!r.klein_residual.empty()) os << "klein residual: " << r.klein_residual << "\n";
    if (r.x_recognized && r.x_recognized->found)
        os << "X recognized: " << r.x_recognized->poly
           << (r.x_recognized->verified ? " (verified)" : " (unverified)") << "\n";
    if (r.y_recognized && r.y_recognized->found)
        os << "Y recognized: " << r.y_recognized->poly
           << (r.y_recognized->verified ? " (verified)" : " (unverified)") << "\n";
    if (r.galois_degree) {
        os << "galois degree: " << *r.galois_degree << " quotient:";
        for (const auto& q : *r.galois_quotient) os << " Z/" << q;
        os << "\n";
    }
    for (const auto& c : r.checks)
        os << "check " << c.name << ": " << (c.pass ? "pass" : "FAIL") << " (" << c.residual
           << ")\n";
    if (r.error) os << "error: " << *r.error << "\n";
    return os.str();
}

}  // namespace kleincm
