#pragma once

#include <stdexcept>
#include <string>

namespace sqom {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// OPA pump at or above the parametric threshold |2 Xi_d| >= Delta_c.
struct ThresholdExceeded : Error {
    using Error::Error;
};

// Mean-field iteration failed to reach the requested residual.
struct NonConvergence : Error {
    using Error::Error;
};

// Zero reference coupling in an enhancement ratio.
struct DivisionByZero : Error {
    using Error::Error;
};

// Steady state requested for a drift with nonnegative spectral abscissa.
struct Unstable : Error {
    using Error::Error;
};

// Linear solve produced an unacceptable residual.
struct SingularSystem : Error {
    using Error::Error;
};

// Moment vector violates hermiticity pairings beyond tolerance.
struct NonHermitianMoments : Error {
    using Error::Error;
};

// Sigma^2 - 4 det(V) significantly negative: input CM is unphysical.
struct ComplexBranch : Error {
    using Error::Error;
};

// A contangle residual is negative beyond numerical tolerance.
struct MonogamyViolation : Error {
    using Error::Error;
};

// Integrator step exceeds the resolution bound for the drift.
struct StepTooLarge : Error {
    using Error::Error;
};

// 2x2 Wigner projection with vanishing determinant.
struct DegenerateProjection : Error {
    using Error::Error;
};

// Bad key, bad value, or inconsistent combination in a config file.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace sqom
