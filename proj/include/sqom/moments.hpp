#pragma once

#include <Eigen/Dense>

#include "sqom/meanfield.hpp"

namespace sqom {

inline constexpr int kNumMoments = 24;

using DriftMatrix = Eigen::Matrix<Complex, kNumMoments, kNumMoments>;
using MomentVector = Eigen::Matrix<Complex, kNumMoments, 1>;

// Second-moment ordering. Names read left to right in operator order,
// "d" marking a dagger: CB1d = <c_s b_1^dag>.
enum MomentIndex : int {
    kCdC = 0,   // <c+ c>
    kCCd,       // <c c+>
    kB1dB1,     // <b1+ b1>
    kB1B1d,     // <b1 b1+>
    kB2dB2,     // <b2+ b2>
    kB2B2d,     // <b2 b2+>
    kCC,        // <c c>
    kCdCd,      // <c+ c+>
    kB1B1,      // <b1 b1>
    kB1dB1d,    // <b1+ b1+>
    kB2B2,      // <b2 b2>
    kB2dB2d,    // <b2+ b2+>
    kCB1,       // <c b1>
    kCdB1d,     // <c+ b1+>
    kCB1d,      // <c b1+>
    kCdB1,      // <c+ b1>
    kCB2,       // <c b2>
    kCdB2d,     // <c+ b2+>
    kCB2d,      // <c b2+>
    kCdB2,      // <c+ b2>
    kB1B2,      // <b1 b2>
    kB1dB2d,    // <b1+ b2+>
    kB1B2d,     // <b1 b2+>
    kB1dB2,     // <b1+ b2>
};

// Index of the conjugate moment, <A B>* = <B+ A+>.
int conjugate_index(int k);

struct MomentSystem {
    DriftMatrix drift;
    MomentVector drive;
};

// Assembles d/dt X = drift * X + drive for the closed set of 24 second
// moments of the linearized model.
MomentSystem build_drift(const LinearizedModel& m);

struct Stability {
    bool stable = false;
    double spectral_abscissa = 0.0;
};

// Stable iff the maximal real part of the drift spectrum is < -1e-9.
Stability stability(const DriftMatrix& drift);

struct MomentState {
    MomentVector x = MomentVector::Zero();
    double spectral_abscissa = 0.0;
    double residual = 0.0;  // ||drift x + drive||_inf of the returned state
};

// Steady state by pivoted dense solve of drift * X = -drive.
// Throws Unstable when the spectral abscissa is >= 0, SingularSystem when
// the solve residual is unacceptable.
MomentState steady_moments(const MomentSystem& sys);

// Fixed-step classical RK4 integration of the moment system; independent
// consistency route for steady_moments. Requires dt <= 0.05 / ||drift||_inf.
MomentState evolve_moments(const MomentSystem& sys, const MomentVector& x0,
                           double t_final, double dt);

double drift_inf_norm(const DriftMatrix& drift);

}  // namespace sqom
