#include "sqom/params.hpp"

#include <cmath>

#include "sqom/errors.hpp"

namespace sqom {

void PhysicalParams::validate() {
    auto nonneg = [](double v, const char* name) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw Error(std::string("parameter must be finite and >= 0: ") + name);
        }
    };
    nonneg(omega_m1, "omega_m1");
    nonneg(omega_m2, "omega_m2");
    nonneg(kappa, "kappa");
    nonneg(gamma_m1, "gamma_m1");
    nonneg(gamma_m2, "gamma_m2");
    nonneg(g1, "g1");
    nonneg(g2, "g2");
    nonneg(chi, "chi");
    nonneg(drive_amp, "drive_amp");
    nonneg(r_e, "r_e");
    nonneg(nbar_m1, "nbar_m1");
    nonneg(nbar_m2, "nbar_m2");
    if (opa_pump != 0.0 && std::abs(2.0 * opa_pump) >= delta_c) {
        throw ThresholdExceeded("|2 Xi_d| >= Delta_c: pump at or above parametric threshold");
    }
    low_quality_factor = (gamma_m1 > 0.0 && omega_m1 / gamma_m1 < 10.0) ||
                         (gamma_m2 > 0.0 && omega_m2 / gamma_m2 < 10.0);
}

double squeezing_from_opa(double delta_c, double opa_pump) {
    if (opa_pump == 0.0) return 0.0;  // identity frame, any detuning
    if (!(delta_c > 0.0) || std::abs(2.0 * opa_pump) >= delta_c) {
        throw ThresholdExceeded("|2 Xi_d| >= Delta_c: pump at or above parametric threshold");
    }
    return 0.25 * std::log((delta_c + 2.0 * opa_pump) / (delta_c - 2.0 * opa_pump));
}

double opa_from_squeezing(double delta_c, double r_d) {
    return 0.5 * delta_c * std::tanh(2.0 * r_d);
}

double drive_amplitude(double power, double kappa, double omega_drive) {
    if (power < 0.0 || kappa <= 0.0 || omega_drive <= 0.0) {
        throw Error("drive_amplitude requires power >= 0, kappa > 0, omega_drive > 0");
    }
    return std::sqrt(2.0 * kappa * power / omega_drive);
}

double drive_power(double amplitude, double kappa, double omega_drive) {
    if (kappa <= 0.0) throw Error("drive_power requires kappa > 0");
    return amplitude * amplitude * omega_drive / (2.0 * kappa);
}

NoisePair noise_params(double r_d, double theta_d, double r_e, double theta_e) {
    const double dth = theta_e - theta_d;
    const double shd = std::sinh(r_d), chd = std::cosh(r_d);
    const double she = std::sinh(r_e), che = std::cosh(r_e);
    double n_s = shd * shd * che * che + chd * chd * she * she +
                 0.5 * std::cos(dth) * std::sinh(2.0 * r_d) * std::sinh(2.0 * r_e);
    if (n_s < 0.0 && n_s > -1e-12) n_s = 0.0;  // rounding residue of an exact zero
    const Complex eid = std::polar(1.0, theta_d);
    const Complex eidth = std::polar(1.0, dth);
    const Complex m_s = eid * (chd * che + std::conj(eidth) * shd * she) *
                        (shd * che + eidth * chd * she);
    return {n_s, m_s};
}

SqueezedFrame effective_frame(const PhysicalParams& p) {
    SqueezedFrame f;
    f.r_d = squeezing_from_opa(p.delta_c, p.opa_pump);
    f.theta_d = p.theta_d;
    f.omega_s = (p.delta_c - 2.0 * p.opa_pump) * std::exp(2.0 * f.r_d);
    const double c2 = std::cosh(2.0 * f.r_d), s2 = std::sinh(2.0 * f.r_d);
    f.zeta_s1 = p.g1 * c2;
    f.zeta_s2 = p.g2 * c2;
    f.zeta_p1 = p.g1 * s2;
    f.zeta_p2 = p.g2 * s2;
    const double sh = std::sinh(f.r_d);
    f.f1 = p.g1 * sh * sh;
    f.f2 = p.g2 * sh * sh;
    const NoisePair ns = noise_params(f.r_d, p.theta_d, p.r_e, p.theta_e);
    f.n_s = ns.n_s;
    f.m_s = ns.m_s;
    f.delta_r = p.r_e - f.r_d;
    f.delta_theta = p.theta_e - p.theta_d;
    return f;
}

}  // namespace sqom
