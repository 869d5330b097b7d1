/**
 * @file certify.hpp
 * @brief Pipeline orchestration: run the full hypothesis-and-certificate
 *        suite on a Laurent polynomial and emit a machine-readable report.
 *
 * Estimates are labeled non-certified in the report; the verdict
 * CERTIFIED-AT-DESK-SCALE needs every toggled hypothesis, the gate, both
 * denominator certificates and a constant identification.
 */
#ifndef APERYFORGE_CERTIFY_HPP
#define APERYFORGE_CERTIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "aperyforge/analytic.hpp"
#include "aperyforge/arith.hpp"
#include "aperyforge/frobenius.hpp"
#include "aperyforge/generators.hpp"
#include "aperyforge/json_io.hpp"
#include "aperyforge/laurent.hpp"
#include "aperyforge/ode.hpp"
#include "aperyforge/polytope.hpp"

namespace aperyforge {

struct CertifyConfig {
    LaurentPoly phi{1};
    int n = 1;
    long terms = 200;  // M, >= 40
    long r_cover = 1;
    mpz_class C = 1;
    std::optional<int> sign;        // involution sign; both are tried when unset
    std::optional<mpq_class> q0;    // seed; unit seed b_1 = 1 when unset
    mpfr_prec_t precision = 256;    // >= 64
    // hypothesis toggles
    bool check_polytope = true;
    bool check_positivity = true;
    bool check_temperedness = true;
    bool check_involution = true;
    bool check_gate = true;
};

enum class Verdict { Certified, HypothesisFailed, Inconclusive };

/// Tri-state per-hypothesis outcome; Screened* marks sufficient-condition
/// screens that do not prove the property.
enum class FlagState { Pass, ScreenedPass, Fail, Inconclusive, Skipped };

struct CertificateReport {
    CertifyConfig config;
    std::vector<std::pair<std::string, FlagState>> hypotheses;
    RationalSequence a;      // full extended sequence
    RationalSequence b;
    std::optional<DeltaOperator> fitted;
    StructuralReport structural;
    std::optional<int> involution_sign;
    std::optional<SmallestRoot> r_phi;
    std::optional<RadiusEstimate> radius; // consistency estimate, non-certified
    std::optional<GateResult> gate;
    std::optional<mpz_class> eps_b;
    std::optional<mpz_class> frobenius_eps;
    std::optional<LimitEstimate> v0;
    std::optional<MatchResult> match;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> failed;
    std::vector<std::string> inconclusive;
    std::string error; // first stage error, when any

    int exit_code() const {
        switch (verdict) {
            case Verdict::Certified: return 0;
            case Verdict::HypothesisFailed: return 2;
            default: return 3;
        }
    }
    std::string verdict_string() const;
};

/// All coefficients of phi(-x) strictly positive.
bool positivity_check(const LaurentPoly& phi);

CertificateReport run_certificate(const CertifyConfig& config);

Json report_to_json(const CertificateReport& report);
Json config_to_json(const CertifyConfig& config);
CertifyConfig config_from_json(const Json& j);

Json operator_to_json(const DeltaOperator& d);
DeltaOperator operator_from_json(const Json& j);

} // namespace aperyforge

#endif
