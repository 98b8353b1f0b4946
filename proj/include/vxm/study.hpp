#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vxm/specs.hpp"

namespace vxm {

// CLI exit-code mapping: ConfigError -> 1, NumericError -> 2, and a study
// whose in-band verdict fails -> 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StudyReport {
    Json config_echo;
    std::vector<Json> results;
    double sup_ratio = 0.0;
    Json fitted_C;            // number, or null when the study fits nothing
    Json condition_constants; // object of named condition/class constants
    int levels = 0;
    double drift_pct = 0.0;
    double runtime_s = 0.0;
    std::string verdict = "ok"; // "ok" | "assertion failed" | "hypothesis unmet"

    Json to_json() const;
    std::string to_csv() const;
    bool assertion_failed() const { return verdict == "assertion failed"; }
};

/// Operator boundedness study: norm-ratio sups over a seeded function family
/// in Lebesgue mode (whole-domain norms) or Morrey mode (family norms with
/// shapes φ1/φ2), with refinement-ladder stability (h halved / extent
/// doubled per level) and the relevant condition constants recorded.
StudyReport run_boundedness_study(const Json& cfg);

/// Local estimate check: fitted constant of the ball-norm bound for the
/// potential (plain) or its commutator (log-augmented, with the oscillation
/// norm of the symbol), over a (function, center, radius) product set.
StudyReport run_local_estimate_check(const Json& cfg);

/// Oscillation-necessity test: per ball, the mean oscillation of the symbol
/// against the commutator bound t^{-n-alpha} ||[b,T] χ_B||_{q,ω} ||χ_B||_{q',1/ω};
/// the sup ratio and its refinement stability support the implication.
StudyReport run_bmo_necessity_test(const Json& cfg);

/// Vanishing-preservation study: small-radius moduli of each test function
/// (source shape) and of its potential/commutator image (target shape);
/// whenever the source decays 10x across the radius span, the target must.
StudyReport run_vanishing_study(const Json& cfg);

} // namespace vxm
