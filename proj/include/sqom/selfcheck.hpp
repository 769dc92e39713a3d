#pragma once

#include <random>
#include <string>
#include <vector>

#include "sqom/moments.hpp"

namespace sqom {

// Right-hand sides of the 24 moment equations evaluated term by term,
// written out literally and kept independent of the matrix assembly in
// build_drift. Cross-checking the two transcriptions is the primary
// defence against coefficient typos.
MomentVector reference_moment_rhs(const LinearizedModel& m, const MomentVector& x);

// Random linearized model with a physical noise pair; resamples until
// the drift is stable with spectral abscissa <= -margin.
LinearizedModel random_stable_model(std::mt19937_64& rng, double margin = 0.02);

enum class FaultInjection { none, drift_perturb, cm_scale };

struct SuiteResult {
    std::string name;
    bool pass = false;
    double ms = 0.0;
    std::string detail;
};

// Runs every invariant suite; fault injection deliberately corrupts one
// stage so the corresponding suite must go red.
std::vector<SuiteResult> run_self_check(FaultInjection fault = FaultInjection::none,
                                        unsigned seed = 12345, int n_random = 200);

}  // namespace sqom
