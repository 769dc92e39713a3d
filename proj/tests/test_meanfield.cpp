#include <doctest.h>

#include <cmath>

#include "sqom/errors.hpp"
#include "sqom/meanfield.hpp"

using namespace sqom;

namespace {

PhysicalParams resonant_point() {
    PhysicalParams p;
    p.kappa = 0.9;
    p.gamma_m1 = p.gamma_m2 = 1e-5;
    p.g1 = p.g2 = 0.2;
    p.chi = 0.1;
    p.phi = M_PI / 2.0;
    p.delta_c = 1.0;
    p.nbar_m1 = p.nbar_m2 = 100.0;
    return p;
}

}  // namespace

TEST_CASE("undriven fixed point is zero") {
    PhysicalParams p = resonant_point();
    p.drive_amp = 0.0;
    const MeanField mf = solve_mean_field(p, effective_frame(p));
    CHECK(mf.cbar_s == Complex(0.0));
    CHECK(mf.bbar_1 == Complex(0.0));
    CHECK(mf.bbar_2 == Complex(0.0));
    CHECK(mf.alpha_s == 0.0);
    CHECK(mf.beta_s == 0.0);
    CHECK(mf.beta_p == 0.0);
}

TEST_CASE("decoupled cavity closed form") {
    PhysicalParams p = resonant_point();
    p.g1 = p.g2 = 0.0;
    p.chi = 0.0;
    p.drive_amp = 0.7;
    const MeanField mf = solve_mean_field(p, effective_frame(p));
    const Complex want = p.drive_amp / (0.5 * p.kappa + Complex(0.0, 1.0) * p.delta_c);
    CHECK(std::abs(mf.cbar_s - want) < 1e-12);
    CHECK(std::abs(mf.bbar_1) < 1e-14);
    CHECK(std::abs(mf.bbar_2) < 1e-14);
}

TEST_CASE("driven coupled point converges with weak-coupling ordering") {
    PhysicalParams p = resonant_point();
    p.drive_amp = 0.5;
    p.opa_pump = opa_from_squeezing(p.delta_c, 0.25);
    p.theta_d = M_PI;
    const SqueezedFrame f = effective_frame(p);
    const MeanField mf = solve_mean_field(p, f);
    CHECK(mf.residual < 1e-10 * (1.0 + p.drive_amp));
    CHECK(std::abs(mf.bbar_1) < std::abs(mf.cbar_s));
    CHECK(std::abs(mf.bbar_2) < std::abs(mf.cbar_s));
    // delta_s decomposes exactly
    CHECK(mf.delta_s == doctest::Approx(f.omega_s - mf.beta_s).epsilon(1e-12));
}

TEST_CASE("continuation stability of the solve") {
    PhysicalParams p = resonant_point();
    p.drive_amp = 0.5;
    const SqueezedFrame f = effective_frame(p);
    const MeanField a = solve_mean_field(p, f);
    p.drive_amp *= 1.0 + 1e-9;
    const MeanField b = solve_mean_field(p, effective_frame(p));
    CHECK(std::abs(b.cbar_s - a.cbar_s) / std::abs(a.cbar_s) < 1e-6);
}

TEST_CASE("linearized coupling closed forms") {
    const Complex g(0.37, 0.0);
    CHECK(linearized_coupling(g, 0.0, 1.23) == g);
    const Complex at_pi = linearized_coupling(g, 1.0, M_PI);
    CHECK(std::abs(at_pi - g * std::exp(2.0)) < 1e-12 * std::exp(2.0));
    const Complex at_zero = linearized_coupling(g, 1.0, 0.0);
    CHECK(std::abs(at_zero - g * std::exp(-2.0)) < 1e-14);
}

TEST_CASE("enhancement factor laws") {
    const Complex g(1.0, 0.0);
    CHECK(enhancement_factor(linearized_coupling(g, 0.0, 0.4), g) == doctest::Approx(1.0));
    for (double rd = 0.0; rd <= 2.0; rd += 0.25) {
        const double up = enhancement_factor(linearized_coupling(g, rd, M_PI), g);
        const double down = enhancement_factor(linearized_coupling(g, rd, 0.0), g);
        CHECK(up == doctest::Approx(std::exp(2.0 * rd)).epsilon(1e-12));
        CHECK(down == doctest::Approx(std::exp(-2.0 * rd)).epsilon(1e-12));
    }
    // 2 pi periodicity in the reference angle
    for (double thd = 0.0; thd < 2.0 * M_PI; thd += 0.37) {
        const double a = enhancement_factor(linearized_coupling(g, 0.25, thd), g);
        const double b = enhancement_factor(linearized_coupling(g, 0.25, thd + 2.0 * M_PI), g);
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
    CHECK(enhancement_factor(linearized_coupling(g, 0.25, M_PI), g) ==
          doctest::Approx(std::exp(0.5)).epsilon(1e-12));
    CHECK_THROWS_AS(enhancement_factor(Complex(1.0, 0.0), Complex(0.0, 0.0)), DivisionByZero);
}

TEST_CASE("reproduction-mode model") {
    PhysicalParams p = resonant_point();
    p.opa_pump = opa_from_squeezing(p.delta_c, 0.25);
    for (double thd : {0.0, M_PI}) {
        p.theta_d = thd;
        const LinearizedModel m = build_linearized(p, effective_frame(p));
        CHECK(std::abs(m.lambda_1.imag()) < 1e-15);  // real couplings at 0 and pi
        CHECK(std::abs(m.nu - Complex(0.0, -0.1)) < 1e-15);
        CHECK(std::abs(m.nu) == doctest::Approx(p.chi).epsilon(1e-14));
        CHECK(m.delta_s == doctest::Approx(p.delta_c / std::cosh(0.5)).epsilon(1e-12));
    }
    // calibration scale passes straight through to the reference coupling
    const LinearizedModel scaled = build_linearized(p, effective_frame(p), 0.5);
    CHECK(scaled.g_lin_1 == Complex(0.1, 0.0));
}

TEST_CASE("bistable strong drive reports non-convergence") {
    PhysicalParams p = resonant_point();
    p.drive_amp = 2.0;
    p.opa_pump = opa_from_squeezing(p.delta_c, 0.25);
    p.theta_d = M_PI;
    CHECK_THROWS_AS(solve_mean_field(p, effective_frame(p)), NonConvergence);
}

TEST_CASE("first-principles model at zero drive has zero coupling") {
    PhysicalParams p = resonant_point();
    p.drive_amp = 0.0;
    const SqueezedFrame f = effective_frame(p);
    const LinearizedModel m = build_linearized(p, f, solve_mean_field(p, f));
    CHECK(m.lambda_1 == Complex(0.0));
    CHECK(m.lambda_2 == Complex(0.0));
    CHECK(m.beta_p_over_kappa == 0.0);
}
