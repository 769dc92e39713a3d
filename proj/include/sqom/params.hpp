#pragma once

#include <complex>

namespace sqom {

using Complex = std::complex<double>;

// Full parameter set of the driven two-mirror cavity with an intracavity
// parametric amplifier and a squeezed-vacuum input. All frequencies and
// rates are expressed in units of the reference mechanical frequency.
struct PhysicalParams {
    double omega_m1 = 1.0;   // mechanical frequencies
    double omega_m2 = 1.0;
    double kappa = 0.9;      // cavity energy decay rate
    double gamma_m1 = 1e-5;  // mechanical damping rates
    double gamma_m2 = 1e-5;
    double g1 = 0.2;         // single-photon optomechanical couplings
    double g2 = 0.2;
    double chi = 0.1;        // phonon-hopping strength
    double phi = 0.0;        // phonon-hopping phase (rad)
    double delta_c = 1.0;    // cavity-pump detuning
    double opa_pump = 0.0;   // parametric pump amplitude Xi_d
    double theta_d = 0.0;    // parametric pump phase (rad)
    double drive_amp = 0.0;  // optical drive amplitude (real, >= 0)
    double r_e = 0.0;        // input-field squeezing degree
    double theta_e = 0.0;    // input-field squeezing phase (rad)
    double nbar_m1 = 0.0;    // mean thermal phonon numbers
    double nbar_m2 = 0.0;

    // Set when either mechanical quality factor omega_m/gamma_m < 10,
    // where the Markovian bath treatment becomes questionable.
    bool low_quality_factor = false;

    // Checks invariants; throws ThresholdExceeded / Error on violation
    // and updates low_quality_factor.
    void validate();
};

// Intracavity squeezing strength from the pump: r = (1/4) ln[(D+2X)/(D-2X)].
// Throws ThresholdExceeded when |2*opa_pump| >= delta_c.
double squeezing_from_opa(double delta_c, double opa_pump);

// Inverse of squeezing_from_opa at fixed detuning: Xi_d = (D/2) tanh(2r).
double opa_from_squeezing(double delta_c, double r_d);

// Drive amplitude from laser power, sqrt(2*kappa*power/omega_drive)
// (hbar = 1 units), and its inverse.
double drive_amplitude(double power, double kappa, double omega_drive);
double drive_power(double amplitude, double kappa, double omega_drive);

// Coefficients of the model in the squeezed cavity frame.
struct SqueezedFrame {
    double r_d = 0.0;        // intracavity squeezing strength
    double theta_d = 0.0;    // squeezing reference angle
    double omega_s = 0.0;    // effective cavity resonance frequency
    double zeta_s1 = 0.0;    // effective couplings, beam-splitter type
    double zeta_s2 = 0.0;
    double zeta_p1 = 0.0;    // effective couplings, parametric type
    double zeta_p2 = 0.0;
    double n_s = 0.0;        // effective optical thermal noise
    Complex m_s = 0.0;       // effective two-photon correlation
    double f1 = 0.0;         // static forces cancelling the pump push
    double f2 = 0.0;
    double delta_r = 0.0;    // r_e - r_d
    double delta_theta = 0.0;  // theta_e - theta_d
};

// Effective optical noise pair seen by the squeezed cavity mode.
struct NoisePair {
    double n_s;
    Complex m_s;
};

NoisePair noise_params(double r_d, double theta_d, double r_e, double theta_e);

// Full squeezed-frame transform of a validated parameter set.
SqueezedFrame effective_frame(const PhysicalParams& p);

}  // namespace sqom
