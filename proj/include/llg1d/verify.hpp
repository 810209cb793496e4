#pragma once

#include "llg1d/ldp.hpp"

#include <string>
#include <vector>

namespace llg1d::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Acceptance-grade checks. Tolerances are pinned here.
CheckResult check_sphere_constraint();
CheckResult check_harmonic_identity();
CheckResult check_stratonovich_ito_consistency();
CheckResult check_stability();
CheckResult check_exponential_decay();
CheckResult check_uniformity_preservation();
CheckResult check_reversal_construction(bool with_ensemble);
CheckResult check_bound_formulas();
CheckResult check_determinism();

// Cheap analytic spot checks (formula values, algebra identities, geometry).
std::vector<CheckResult> quick_checks();

// quick: analytic checks only; full: adds refinement sweeps, weak-equivalence
// tests, decay runs and the end-to-end reversal check.
std::vector<CheckResult> run_suite(bool full);

} // namespace llg1d::verify
