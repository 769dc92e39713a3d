#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sqom/entanglement.hpp"
#include "sqom/errors.hpp"
#include "sqom/selfcheck.hpp"

using namespace sqom;

TEST_CASE("vacuum carries no entanglement") {
    const CM6 vac = 0.5 * CM6::Identity();
    CHECK(log_negativity(vac, Mode::cavity, Mode::mirror1) == 0.0);
    CHECK(one_vs_two_contangle(vac, Mode::cavity) == 0.0);
    const ResidualContangle rc = residual_contangle_min(vac);
    CHECK(rc.r_min == 0.0);
}

TEST_CASE("two-mode squeezed vacuum oracle") {
    for (double s : {0.1, 0.5, 1.0}) {
        const CM6 v = testing::tmsv_embedded(s, Mode::cavity, Mode::mirror1);
        const PairNegativity pn = log_negativity_detail(v, Mode::cavity, Mode::mirror1);
        CHECK(std::abs(pn.en - 2.0 * s) < 1e-9);
        CHECK(pn.eta_minus == doctest::Approx(0.5 * std::exp(-2.0 * s)).epsilon(1e-10));
        // appended vacuum mode leaves the one-vs-two split unchanged
        CHECK(std::abs(one_vs_two_contangle(v, Mode::cavity) - 4.0 * s * s) < 1e-8);
        // the disentangled pairs carry nothing
        CHECK(log_negativity(v, Mode::cavity, Mode::mirror2) == 0.0);
        CHECK(log_negativity(v, Mode::mirror1, Mode::mirror2) == 0.0);
    }
}

TEST_CASE("product states have zero residual contangle") {
    for (double s : {0.2, 0.8}) {
        const CM6 v = testing::tmsv_embedded(s, Mode::cavity, Mode::mirror1);
        const ResidualContangle rc = residual_contangle_min(v);
        CHECK(std::abs(rc.r_min) < 1e-9);
    }
}

TEST_CASE("PPT positivity is consistent with the threshold") {
    std::mt19937_64 rng(61);
    for (int k = 0; k < 200; ++k) {
        const LinearizedModel m = random_stable_model(rng);
        const CM6 v = assemble_cm(steady_moments(build_drift(m))).v;
        for (auto [a, b] : {std::pair{Mode::cavity, Mode::mirror1},
                            std::pair{Mode::cavity, Mode::mirror2},
                            std::pair{Mode::mirror1, Mode::mirror2}}) {
            const PairNegativity pn = log_negativity_detail(v, a, b);
            if (pn.en > 0.0) {
                CHECK(pn.eta_minus < 0.5 - 1e-12);
            } else {
                CHECK(pn.eta_minus >= 0.5 - 1e-9);
            }
        }
    }
}

TEST_CASE("monogamy residuals are nonnegative on steady states") {
    std::mt19937_64 rng(67);
    double lowest = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 200; ++k) {
        const LinearizedModel m = random_stable_model(rng);
        const CM6 v = assemble_cm(steady_moments(build_drift(m))).v;
        const ResidualContangle rc = residual_contangle_min(v);
        for (double r : rc.report.residuals) lowest = std::min(lowest, r);
        CHECK(rc.r_min == *std::min_element(rc.report.residuals.begin(),
                                            rc.report.residuals.end()));
    }
    CHECK(lowest >= -1e-9);
}

TEST_CASE("mirror relabeling symmetry of the pair negativities") {
    std::mt19937_64 rng(71);
    for (int k = 0; k < 10; ++k) {
        LinearizedModel m = random_stable_model(rng);
        m.gamma_m2 = m.gamma_m1;
        m.omega_m2 = m.omega_m1;
        m.nbar_m2 = m.nbar_m1;
        m.lambda_2 = m.lambda_1;
        LinearizedModel swapped = m;
        swapped.nu = std::conj(m.nu);
        const CM6 v = assemble_cm(steady_moments(build_drift(m))).v;
        const CM6 w = assemble_cm(steady_moments(build_drift(swapped))).v;
        CHECK(std::abs(log_negativity(v, Mode::cavity, Mode::mirror1) -
                       log_negativity(w, Mode::cavity, Mode::mirror2)) < 1e-9);
    }
}

TEST_CASE("negativity is invariant under local phase rotations") {
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    for (int k = 0; k < 10; ++k) {
        const LinearizedModel m = random_stable_model(rng);
        const CM6 v = assemble_cm(steady_moments(build_drift(m))).v;
        for (Mode rotated : {Mode::cavity, Mode::mirror1, Mode::mirror2}) {
            const double al = u(rng);
            CM6 rot = CM6::Identity();
            const int i = 2 * static_cast<int>(rotated);
            rot(i, i) = std::cos(al);
            rot(i, i + 1) = std::sin(al);
            rot(i + 1, i) = -std::sin(al);
            rot(i + 1, i + 1) = std::cos(al);
            const CM6 w = rot * v * rot.transpose();
            CHECK(std::abs(log_negativity(w, Mode::cavity, Mode::mirror1) -
                           log_negativity(v, Mode::cavity, Mode::mirror1)) < 1e-9);
            CHECK(std::abs(one_vs_two_contangle(w, Mode::mirror1) -
                           one_vs_two_contangle(v, Mode::mirror1)) < 1e-9);
        }
    }
}

TEST_CASE("error paths") {
    SUBCASE("sub-Heisenberg input violates monogamy") {
        const CM6 bad = 0.45 * 0.5 * CM6::Identity();
        CHECK_THROWS_AS(residual_contangle_min(bad), MonogamyViolation);
    }
    SUBCASE("indefinite input trips the complex branch") {
        CM6 v = 0.5 * CM6::Identity();
        // symmetric indefinite block with det V_4 > Sigma^2 / 4
        const double block[4][4] = {
            {-0.0837, -0.9383, -0.1098, -0.7344},
            {-0.9383, 0.5534, 0.3834, -0.3813},
            {-0.1098, 0.3834, -1.643, -0.7731},
            {-0.7344, -0.3813, -0.7731, 0.0207},
        };
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) v(i, j) = block[i][j];
        }
        CHECK_THROWS_AS(log_negativity(v, Mode::cavity, Mode::mirror1), ComplexBranch);
    }
}
