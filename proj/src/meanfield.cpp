#include "sqom/meanfield.hpp"

#include <cmath>

#include "sqom/errors.hpp"

namespace sqom {

namespace {

const Complex kI(0.0, 1.0);

// Cavity amplitude from the first steady-state equation at fixed mirror
// displacements.
Complex cavity_update(double delta_s, double beta_p, double kappa, Complex a1,
                      Complex a2, double eps) {
    const Complex num = (kI * delta_s - 0.5 * kappa) * a1 + kI * a2 * beta_p;
    const double den = delta_s * delta_s + 0.25 * kappa * kappa - beta_p * beta_p;
    return -num / den * eps;
}

struct MirrorPair {
    Complex b1, b2;
};

// The two mirror equations are linear in (b1, b2) at fixed cavity
// amplitude: solve them exactly by Cramer's rule.
MirrorPair solve_mirrors(const PhysicalParams& p, const SqueezedFrame& f,
                         Complex cbar, double alpha_s) {
    const Complex d1 = kI * p.omega_m1 + 0.5 * p.gamma_m1;
    const Complex d2 = kI * p.omega_m2 + 0.5 * p.gamma_m2;
    const Complex h12 = kI * p.chi * std::polar(1.0, -p.phi);
    const Complex h21 = kI * p.chi * std::polar(1.0, p.phi);
    const double n = std::norm(cbar);
    const Complex r1 = kI * f.zeta_s1 * n - kI * 0.5 * f.zeta_p1 * alpha_s;
    const Complex r2 = kI * f.zeta_s2 * n - kI * 0.5 * f.zeta_p2 * alpha_s;
    const Complex det = d1 * d2 - h12 * h21;
    if (det == Complex(0.0)) throw SingularSystem("mirror block is singular");
    return {(r1 * d2 - h12 * r2) / det, (d1 * r2 - r1 * h21) / det};
}

}  // namespace

MeanField solve_mean_field(const PhysicalParams& p, const SqueezedFrame& f,
                           const MeanFieldOptions& opt) {
    MeanField mf;
    mf.a1 = std::cosh(f.r_d) + std::sinh(f.r_d) * std::polar(1.0, -f.theta_d);
    mf.a2 = std::cosh(f.r_d) * std::polar(1.0, -f.theta_d) + std::sinh(f.r_d);

    const double eps = p.drive_amp;
    const double tol = opt.tolerance_scale * (1.0 + std::abs(eps));

    if (eps == 0.0) {
        mf.delta_s = f.omega_s;
        mf.residual = 0.0;
        return mf;  // undriven fixed point is exactly zero
    }

    Complex cbar = cavity_update(f.omega_s, 0.0, p.kappa, mf.a1, mf.a2, eps);
    Complex b1 = 0.0, b2 = 0.0;
    double delta_s = f.omega_s, alpha_s = 0.0, beta_s = 0.0, beta_p = 0.0;

    auto defect = [&](Complex c, Complex m1, Complex m2) {
        const double al = 2.0 * std::real(std::polar(1.0, f.theta_d) * c * c);
        const double bs = f.zeta_s1 * 2.0 * m1.real() + f.zeta_s2 * 2.0 * m2.real();
        const double bp = f.zeta_p1 * 2.0 * m1.real() + f.zeta_p2 * 2.0 * m2.real();
        const double ds = f.omega_s - bs;
        const Complex c_rhs = cavity_update(ds, bp, p.kappa, mf.a1, mf.a2, eps);
        const MirrorPair mp = solve_mirrors(p, f, c, al);
        return std::max({std::abs(c - c_rhs), std::abs(m1 - mp.b1), std::abs(m2 - mp.b2)});
    };

    int it = 0;
    double res = std::numeric_limits<double>::infinity();
    for (; it < opt.max_iterations; ++it) {
        alpha_s = 2.0 * std::real(std::polar(1.0, f.theta_d) * cbar * cbar);
        const MirrorPair mp = solve_mirrors(p, f, cbar, alpha_s);
        b1 = mp.b1;
        b2 = mp.b2;
        beta_s = f.zeta_s1 * 2.0 * b1.real() + f.zeta_s2 * 2.0 * b2.real();
        beta_p = f.zeta_p1 * 2.0 * b1.real() + f.zeta_p2 * 2.0 * b2.real();
        delta_s = f.omega_s - beta_s;
        const Complex next = cavity_update(delta_s, beta_p, p.kappa, mf.a1, mf.a2, eps);
        cbar = (1.0 - opt.damping) * cbar + opt.damping * next;
        res = defect(cbar, b1, b2);
        if (res < tol) break;
    }
    if (res >= tol) {
        throw NonConvergence("mean field did not converge: residual " +
                             std::to_string(res) + " after " +
                             std::to_string(it) + " iterations");
    }

    mf.cbar_s = cbar;
    mf.bbar_1 = b1;
    mf.bbar_2 = b2;
    mf.delta_s = delta_s;
    mf.alpha_s = alpha_s;
    mf.beta_s = beta_s;
    mf.beta_p = beta_p;
    mf.residual = res;
    mf.iterations = it + 1;
    return mf;
}

Complex linearized_coupling(Complex g_lin, double r_d, double theta_d) {
    return g_lin * std::cosh(2.0 * r_d) -
           std::conj(g_lin) * std::sinh(2.0 * r_d) * std::polar(1.0, -theta_d);
}

double enhancement_factor(Complex lambda, Complex g_lin) {
    if (g_lin == Complex(0.0)) {
        throw DivisionByZero("enhancement factor undefined for zero coupling");
    }
    return std::abs(lambda / g_lin);
}

namespace {

LinearizedModel common_model(const PhysicalParams& p, const SqueezedFrame& f) {
    LinearizedModel m;
    m.nu = p.chi * std::polar(1.0, -p.phi);
    m.kappa = p.kappa;
    m.gamma_m1 = p.gamma_m1;
    m.gamma_m2 = p.gamma_m2;
    m.n_s = f.n_s;
    m.m_s = f.m_s;
    m.nbar_m1 = p.nbar_m1;
    m.nbar_m2 = p.nbar_m2;
    m.omega_m1 = p.omega_m1;
    m.omega_m2 = p.omega_m2;
    return m;
}

}  // namespace

LinearizedModel build_linearized(const PhysicalParams& p, const SqueezedFrame& f,
                                 double coupling_scale) {
    LinearizedModel m = common_model(p, f);
    m.delta_s = f.omega_s;
    m.g_lin_1 = coupling_scale * p.g1;
    m.g_lin_2 = coupling_scale * p.g2;
    m.lambda_1 = linearized_coupling(m.g_lin_1, f.r_d, f.theta_d);
    m.lambda_2 = linearized_coupling(m.g_lin_2, f.r_d, f.theta_d);
    return m;
}

LinearizedModel build_linearized(const PhysicalParams& p, const SqueezedFrame& f,
                                 const MeanField& mf) {
    LinearizedModel m = common_model(p, f);
    m.delta_s = mf.delta_s;
    m.g_lin_1 = p.g1 * mf.cbar_s;
    m.g_lin_2 = p.g2 * mf.cbar_s;
    m.lambda_1 = linearized_coupling(m.g_lin_1, f.r_d, f.theta_d);
    m.lambda_2 = linearized_coupling(m.g_lin_2, f.r_d, f.theta_d);
    m.beta_p_over_kappa = p.kappa > 0.0 ? std::abs(mf.beta_p) / p.kappa : 0.0;
    return m;
}

}  // namespace sqom
