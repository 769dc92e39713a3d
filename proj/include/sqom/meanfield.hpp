#pragma once

#include "sqom/params.hpp"

namespace sqom {

// Self-consistent classical steady state (c_s, b_1, b_2) of the driven
// squeezed-frame model, together with the auxiliaries that enter it.
struct MeanField {
    Complex cbar_s = 0.0;
    Complex bbar_1 = 0.0;
    Complex bbar_2 = 0.0;
    double delta_s = 0.0;  // omega_s - beta_s
    double alpha_s = 0.0;  // 2 Re[e^{i theta_d} cbar_s^2]
    double beta_s = 0.0;   // zeta_s-weighted mirror displacement
    double beta_p = 0.0;   // zeta_p-weighted mirror displacement
    Complex a1 = 0.0;      // cosh(r) + sinh(r) e^{-i theta}
    Complex a2 = 0.0;      // cosh(r) e^{-i theta} + sinh(r)
    double residual = 0.0;
    int iterations = 0;
};

struct MeanFieldOptions {
    int max_iterations = 10000;
    double damping = 0.5;
    double tolerance_scale = 1e-10;  // residual < scale * (1 + |drive|)
};

// Damped fixed-point solve: mirrors are eliminated exactly by a 2x2
// linear solve at fixed cavity amplitude; the cavity amplitude is then
// relaxed. Throws NonConvergence when the residual stagnates.
MeanField solve_mean_field(const PhysicalParams& p, const SqueezedFrame& f,
                           const MeanFieldOptions& opt = {});

// Coupling in the squeezed frame: G cosh(2r) - conj(G) sinh(2r) e^{-i theta}.
Complex linearized_coupling(Complex g_lin, double r_d, double theta_d);

// |Lambda / G|. Throws DivisionByZero when g_lin == 0.
double enhancement_factor(Complex lambda, Complex g_lin);

// Closed coefficient set that fully determines the Gaussian dynamics.
struct LinearizedModel {
    double delta_s = 0.0;
    Complex lambda_1 = 0.0;
    Complex lambda_2 = 0.0;
    Complex nu = 0.0;  // chi e^{-i phi}
    double kappa = 0.0;
    double gamma_m1 = 0.0;
    double gamma_m2 = 0.0;
    double n_s = 0.0;
    Complex m_s = 0.0;
    double nbar_m1 = 0.0;
    double nbar_m2 = 0.0;
    double omega_m1 = 0.0;
    double omega_m2 = 0.0;
    // Reference couplings the lambdas were built from, for enhancement
    // ratios and diagnostics.
    Complex g_lin_1 = 0.0;
    Complex g_lin_2 = 0.0;
    // Size of the dropped intracavity parametric term relative to kappa;
    // audit knob for the linearization (always 0 in reproduction mode).
    double beta_p_over_kappa = 0.0;
};

// Reproduction mode: the linearized coupling magnitude is taken directly
// as scale * g_j (real), and delta_s = omega_s. Used when no drive
// amplitude is specified.
LinearizedModel build_linearized(const PhysicalParams& p, const SqueezedFrame& f,
                                 double coupling_scale = 1.0);

// First-principles mode: couplings g_j * cbar_s from a converged mean field.
LinearizedModel build_linearized(const PhysicalParams& p, const SqueezedFrame& f,
                                 const MeanField& mf);

}  // namespace sqom
