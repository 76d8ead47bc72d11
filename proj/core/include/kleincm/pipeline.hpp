#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kleincm/classgroup.hpp"
#include "kleincm/recognition.hpp"
#include "kleincm/symplectic.hpp"
#include "kleincm/theta.hpp"

namespace kleincm {

struct PipelineConfig {
    mpfr_prec_t precision = 128;
    long tol_exp = 0;  // residual tolerance 2^{-tol_exp}; 0 means precision/2
    int depth = 8;
    long node_cap = 200000;
    std::optional<Sp4Element> gamma;        // N5 normalization witness
    std::optional<Mat4z> basis_change;      // symplectic basis witness
    std::optional<ClassGroupShape> class_group;
    bool run_recognition = true;
    int recog_max_degree = 8;
    long recog_height_bits = 512;
};

/// Decimal snapshot of a complex ball.
struct ComplexOut {
    std::string re;
    std::string im;
    std::string err;
};

struct RecognizedOut {
    bool found = false;
    std::vector<std::string> coeffs;  // c0..cd as decimal strings
    std::string poly;
    int degree = 0;
    bool treated_as_real = false;
    std::string residual;
    std::string verify_residual;
    bool verified = false;
};

struct CheckOut {
    std::string name;
    bool pass = false;
    std::string residual;
};

struct Report {
    int schema = 1;
    CMFieldSpec field;
    std::string case_label;
    std::string conductor;
    std::string discriminant;
    std::vector<std::vector<std::string>> gram;
    std::string pfaffian_value;
    std::vector<std::string> basis_change_used;  // 16 integers row-major
    std::vector<std::string> gamma_used;         // 16 integers row-major
    bool gamma_from_search = false;
    std::optional<ComplexOut> tau1, tau2, tau3;
    std::string humbert_residual;
    std::optional<ComplexOut> z1, z2;
    std::optional<ComplexOut> x_value, y_value;
    std::string klein_residual;
    std::string cover_residual;
    std::optional<RecognizedOut> x_recognized, y_recognized;
    std::optional<std::vector<std::string>> galois_quotient;
    std::optional<std::string> galois_degree;
    std::vector<CheckOut> checks;
    std::optional<std::string> error;  // set when a stage failed soft
    long precision_bits = 0;
};

/// The field-to-class-field pipeline; fails soft (partial report with the
/// error recorded) when a stage cannot complete.
Report run_pipeline(const CMFieldSpec& spec, const PipelineConfig& cfg);

/// Evaluate the CM point and forms of the pipeline at a given precision with
/// fixed witnesses; used internally for doubled-precision re-verification.
struct CmEvaluation {
    PeriodMatrix omega_n5;
    HilbertPoint z;
    FormValues forms;
    XYValue xy;
    CanonicalPoint canonical;
};

CmEvaluation evaluate_cm_point(const CMFieldSpec& spec, const Mat4z& basis_change,
                               const Sp4Element& gamma, mpfr_prec_t precision, const Real& tol);

std::string report_to_json(const Report& r, int indent = 2);
std::string report_to_text(const Report& r);

ComplexOut complex_out(const CBall& v);

}  // namespace kleincm
