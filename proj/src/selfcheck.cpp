#include "sqom/selfcheck.hpp"

#include <chrono>
#include <cmath>

#include "sqom/entanglement.hpp"
#include "sqom/errors.hpp"
#include "sqom/params.hpp"

namespace sqom {

MomentVector reference_moment_rhs(const LinearizedModel& m, const MomentVector& x) {
    const Complex I(0.0, 1.0);
    const Complex L1 = m.lambda_1, L2 = m.lambda_2, nu = m.nu, Ms = m.m_s;
    const double Ds = m.delta_s, kap = m.kappa;
    const double g1 = m.gamma_m1, g2 = m.gamma_m2;
    const double w1 = m.omega_m1, w2 = m.omega_m2;
    const double Ns = m.n_s, n1 = m.nbar_m1, n2 = m.nbar_m2;

    MomentVector dx;

    dx(kCdC) = -kap * x(kCdC)
             + I * L1 * x(kCdB1d) + I * L1 * x(kCdB1)
             - I * std::conj(L1) * x(kCB1d) - I * std::conj(L1) * x(kCB1)
             + I * L2 * x(kCdB2d) + I * L2 * x(kCdB2)
             - I * std::conj(L2) * x(kCB2d) - I * std::conj(L2) * x(kCB2)
             + kap * Ns;

    dx(kCCd) = -kap * x(kCCd)
             - I * std::conj(L1) * x(kCB1) - I * std::conj(L1) * x(kCB1d)
             + I * L1 * x(kCdB1) + I * L1 * x(kCdB1d)
             - I * std::conj(L2) * x(kCB2) - I * std::conj(L2) * x(kCB2d)
             + I * L2 * x(kCdB2) + I * L2 * x(kCdB2d)
             + kap * (Ns + 1.0);

    dx(kB1dB1) = -g1 * x(kB1dB1)
               + I * L1 * x(kCdB1d) + I * std::conj(L1) * x(kCB1d)
               - I * L1 * x(kCdB1) - I * std::conj(L1) * x(kCB1)
               - I * nu * x(kB1dB2) + I * std::conj(nu) * x(kB1B2d)
               + g1 * n1;

    dx(kB1B1d) = -g1 * x(kB1B1d)
               - I * std::conj(L1) * x(kCB1) - I * L1 * x(kCdB1)
               + I * std::conj(L1) * x(kCB1d) + I * L1 * x(kCdB1d)
               + I * std::conj(nu) * x(kB1B2d) - I * nu * x(kB1dB2)
               + g1 * (n1 + 1.0);

    dx(kB2dB2) = -g2 * x(kB2dB2)
               + I * L2 * x(kCdB2d) + I * std::conj(L2) * x(kCB2d)
               - I * L2 * x(kCdB2) - I * std::conj(L2) * x(kCB2)
               + I * nu * x(kB1dB2) - I * std::conj(nu) * x(kB1B2d)
               + g2 * n2;

    dx(kB2B2d) = -g2 * x(kB2B2d)
               - I * std::conj(L2) * x(kCB2) - I * L2 * x(kCdB2)
               + I * std::conj(L2) * x(kCB2d) + I * L2 * x(kCdB2d)
               - I * std::conj(nu) * x(kB1B2d) + I * nu * x(kB1dB2)
               + g2 * (n2 + 1.0);

    dx(kCC) = -(2.0 * I * Ds + kap) * x(kCC)
            + 2.0 * I * L1 * x(kCB1d) + 2.0 * I * L1 * x(kCB1)
            + 2.0 * I * L2 * x(kCB2d) + 2.0 * I * L2 * x(kCB2)
            + kap * std::conj(Ms);

    dx(kCdCd) = (2.0 * I * Ds - kap) * x(kCdCd)
              - 2.0 * I * std::conj(L1) * x(kCdB1) - 2.0 * I * std::conj(L1) * x(kCdB1d)
              - 2.0 * I * std::conj(L2) * x(kCdB2) - 2.0 * I * std::conj(L2) * x(kCdB2d)
              + kap * Ms;

    dx(kB1B1) = -(2.0 * I * w1 + g1) * x(kB1B1)
              + 2.0 * I * L1 * x(kCdB1) + 2.0 * I * std::conj(L1) * x(kCB1)
              - 2.0 * I * nu * x(kB1B2);

    dx(kB1dB1d) = (2.0 * I * w1 - g1) * x(kB1dB1d)
                - 2.0 * I * std::conj(L1) * x(kCB1d) - 2.0 * I * L1 * x(kCdB1d)
                + 2.0 * I * std::conj(nu) * x(kB1dB2d);

    dx(kB2B2) = -(2.0 * I * w2 + g2) * x(kB2B2)
              + 2.0 * I * L2 * x(kCdB2) + 2.0 * I * std::conj(L2) * x(kCB2)
              - 2.0 * I * std::conj(nu) * x(kB1B2);

    dx(kB2dB2d) = (2.0 * I * w2 - g2) * x(kB2dB2d)
                - 2.0 * I * std::conj(L2) * x(kCB2d) - 2.0 * I * L2 * x(kCdB2d)
                + 2.0 * I * nu * x(kB1dB2d);

    dx(kCB1) = -(I * (Ds + w1) + 0.5 * (kap + g1)) * x(kCB1)
             + I * L1 * x(kCdC) + I * L1 * x(kB1B1d) + I * L1 * x(kB1B1)
             + I * std::conj(L1) * x(kCC)
             + I * L2 * x(kB1B2d) + I * L2 * x(kB1B2)
             - I * nu * x(kCB2);

    dx(kCdB1d) = (I * (Ds + w1) - 0.5 * (kap + g1)) * x(kCdB1d)
               - I * std::conj(L1) * x(kCCd) - I * std::conj(L1) * x(kB1dB1)
               - I * std::conj(L1) * x(kB1dB1d) - I * L1 * x(kCdCd)
               - I * std::conj(L2) * x(kB1dB2) - I * std::conj(L2) * x(kB1dB2d)
               + I * std::conj(nu) * x(kCdB2d);

    dx(kCB1d) = -(I * (Ds - w1) + 0.5 * (kap + g1)) * x(kCB1d)
              + I * L1 * x(kB1dB1d) - I * L1 * x(kCdC) + I * L1 * x(kB1dB1)
              - I * std::conj(L1) * x(kCC)
              + I * L2 * x(kB1dB2d) + I * L2 * x(kB1dB2)
              + I * std::conj(nu) * x(kCB2d);

    dx(kCdB1) = (I * (Ds - w1) - 0.5 * (kap + g1)) * x(kCdB1)
              - I * std::conj(L1) * x(kB1B1) + I * std::conj(L1) * x(kCCd)
              - I * std::conj(L1) * x(kB1B1d) + I * L1 * x(kCdCd)
              - I * std::conj(L2) * x(kB1B2) - I * std::conj(L2) * x(kB1B2d)
              - I * nu * x(kCdB2);

    dx(kCB2) = -(I * (Ds + w2) + 0.5 * (kap + g2)) * x(kCB2)
             + I * L2 * x(kCdC) + I * L2 * x(kB2B2d) + I * L2 * x(kB2B2)
             + I * std::conj(L2) * x(kCC)
             + I * L1 * x(kB1dB2) + I * L1 * x(kB1B2)
             - I * std::conj(nu) * x(kCB1);

    dx(kCdB2d) = (I * (Ds + w2) - 0.5 * (kap + g2)) * x(kCdB2d)
               - I * std::conj(L2) * x(kCCd) - I * std::conj(L2) * x(kB2dB2)
               - I * std::conj(L2) * x(kB2dB2d) - I * L2 * x(kCdCd)
               - I * std::conj(L1) * x(kB1B2d) - I * std::conj(L1) * x(kB1dB2d)
               + I * nu * x(kCdB1d);

    dx(kCB2d) = -(I * (Ds - w2) + 0.5 * (kap + g2)) * x(kCB2d)
              + I * L2 * x(kB2dB2d) - I * L2 * x(kCdC) + I * L2 * x(kB2dB2)
              - I * std::conj(L2) * x(kCC)
              + I * L1 * x(kB1dB2d) + I * L1 * x(kB1B2d)
              + I * nu * x(kCB1d);

    dx(kCdB2) = (I * (Ds - w2) - 0.5 * (kap + g2)) * x(kCdB2)
              - I * std::conj(L2) * x(kB2B2) + I * std::conj(L2) * x(kCCd)
              - I * std::conj(L2) * x(kB2B2d) + I * L2 * x(kCdCd)
              - I * std::conj(L1) * x(kB1B2) - I * std::conj(L1) * x(kB1dB2)
              - I * std::conj(nu) * x(kCdB1);

    dx(kB1B2) = -(I * (w1 + w2) + 0.5 * (g1 + g2)) * x(kB1B2)
              + I * L1 * x(kCdB2) + I * std::conj(L1) * x(kCB2)
              + I * L2 * x(kCdB1) + I * std::conj(L2) * x(kCB1)
              - I * std::conj(nu) * x(kB1B1) - I * nu * x(kB2B2);

    dx(kB1dB2d) = (I * (w1 + w2) - 0.5 * (g1 + g2)) * x(kB1dB2d)
                - I * std::conj(L1) * x(kCB2d) - I * L1 * x(kCdB2d)
                - I * std::conj(L2) * x(kCB1d) - I * L2 * x(kCdB1d)
                + I * nu * x(kB1dB1d) + I * std::conj(nu) * x(kB2dB2d);

    dx(kB1B2d) = -(I * (w1 - w2) + 0.5 * (g1 + g2)) * x(kB1B2d)
               + I * L1 * x(kCdB2d) + I * std::conj(L1) * x(kCB2d)
               - I * L2 * x(kCdB1) - I * std::conj(L2) * x(kCB1)
               + I * nu * x(kB1B1d) - I * nu * x(kB2B2d);

    dx(kB1dB2) = (I * (w1 - w2) - 0.5 * (g1 + g2)) * x(kB1dB2)
               - I * std::conj(L1) * x(kCB2) - I * L1 * x(kCdB2)
               + I * std::conj(L2) * x(kCB1d) + I * L2 * x(kCdB1d)
               - I * std::conj(nu) * x(kB1dB1) + I * std::conj(nu) * x(kB2dB2);

    return dx;
}

LinearizedModel random_stable_model(std::mt19937_64& rng, double margin) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        LinearizedModel m;
        m.delta_s = 0.2 + 1.3 * u(rng);
        m.omega_m1 = 0.8 + 0.4 * u(rng);
        m.omega_m2 = 0.8 + 0.4 * u(rng);
        m.kappa = 0.3 + 0.9 * u(rng);
        m.gamma_m1 = 0.05 + 0.25 * u(rng);
        m.gamma_m2 = 0.05 + 0.25 * u(rng);
        m.lambda_1 = std::polar(0.15 * u(rng), 2.0 * M_PI * u(rng));
        m.lambda_2 = std::polar(0.15 * u(rng), 2.0 * M_PI * u(rng));
        m.g_lin_1 = m.lambda_1;
        m.g_lin_2 = m.lambda_2;
        m.nu = std::polar(0.2 * u(rng), 2.0 * M_PI * u(rng));
        m.nbar_m1 = 5.0 * u(rng);
        m.nbar_m2 = 5.0 * u(rng);
        const NoisePair ns = noise_params(0.5 * u(rng), 2.0 * M_PI * u(rng),
                                          0.5 * u(rng), 2.0 * M_PI * u(rng));
        m.n_s = ns.n_s;
        m.m_s = ns.m_s;
        const MomentSystem sys = build_drift(m);
        const Stability st = stability(sys.drift);
        if (st.stable && st.spectral_abscissa <= -margin) return m;
    }
    throw Error("could not sample a stable model");
}

namespace {

using Clock = std::chrono::steady_clock;

std::string format_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

struct SuiteTimer {
    Clock::time_point t0 = Clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    }
};

MomentVector random_moment_vector(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    MomentVector x;
    for (int i = 0; i < kNumMoments; ++i) x(i) = Complex(u(rng), u(rng));
    return x;
}

CM6 tmsv_cm(double s) {
    CM6 v = 0.5 * CM6::Identity();
    const double ch = 0.5 * std::cosh(2.0 * s), sh = 0.5 * std::sinh(2.0 * s);
    v(0, 0) = v(1, 1) = v(2, 2) = v(3, 3) = ch;
    v(0, 2) = v(2, 0) = sh;
    v(1, 3) = v(3, 1) = -sh;
    return v;
}

SuiteResult check_drift_vs_ode(std::mt19937_64& rng, int n, FaultInjection fault) {
    SuiteTimer timer;
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const LinearizedModel m = random_stable_model(rng, 0.0);
        MomentSystem sys = build_drift(m);
        if (fault == FaultInjection::drift_perturb) {
            sys.drift(kCB1, kCdC) += 1e-3;
        }
        const MomentVector x = random_moment_vector(rng);
        const MomentVector got = sys.drift * x + sys.drive;
        const MomentVector want = reference_moment_rhs(m, x);
        worst = std::max(worst, (got - want).cwiseAbs().maxCoeff());
    }
    return {"drift-vs-ode", worst < 1e-12, timer.ms(),
            "max term deviation " + format_sci(worst)};
}

SuiteResult check_steady_vs_evolve(std::mt19937_64& rng, int n) {
    SuiteTimer timer;
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const LinearizedModel m = random_stable_model(rng, 0.05);
        const MomentSystem sys = build_drift(m);
        const MomentState steady = steady_moments(sys);
        const double t_final = 50.0 / std::abs(steady.spectral_abscissa);
        const double dt = 0.05 / drift_inf_norm(sys.drift);
        const MomentState evolved =
            evolve_moments(sys, MomentVector::Zero(), t_final, dt);
        const double rel = (evolved.x - steady.x).cwiseAbs().maxCoeff() /
                           steady.x.cwiseAbs().maxCoeff();
        worst = std::max(worst, rel);
    }
    return {"steady-vs-evolve", worst < 1e-8, timer.ms(),
            "max relative deviation " + format_sci(worst)};
}

SuiteResult check_tmsv(FaultInjection) {
    SuiteTimer timer;
    double worst = 0.0;
    for (double s : {0.1, 0.5, 1.0}) {
        const CM6 v = tmsv_cm(s);
        worst = std::max(worst, std::abs(log_negativity(v, Mode::cavity, Mode::mirror1) - 2.0 * s));
        const double etau = one_vs_two_contangle(v, Mode::cavity);
        worst = std::max(worst, std::abs(etau - 4.0 * s * s));
    }
    return {"tmsv-oracle", worst < 1e-9, timer.ms(), "max deviation " + format_sci(worst)};
}

SuiteResult check_hermiticity(std::mt19937_64& rng, int n) {
    SuiteTimer timer;
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const LinearizedModel m = random_stable_model(rng);
        const MomentState st = steady_moments(build_drift(m));
        for (int i = 0; i < kNumMoments; ++i) {
            worst = std::max(worst, std::abs(st.x(conjugate_index(i)) - std::conj(st.x(i))));
        }
        worst = std::max(worst, std::abs(st.x(kCCd) - st.x(kCdC) - 1.0));
        worst = std::max(worst, std::abs(st.x(kB1B1d) - st.x(kB1dB1) - 1.0));
        worst = std::max(worst, std::abs(st.x(kB2B2d) - st.x(kB2dB2) - 1.0));
    }
    return {"hermiticity", worst < 1e-10, timer.ms(), "max residue " + format_sci(worst)};
}

SuiteResult check_physicality(std::mt19937_64& rng, int n, FaultInjection fault) {
    SuiteTimer timer;
    double lowest = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
        const LinearizedModel m = random_stable_model(rng);
        CovarianceMatrix cm = assemble_cm(steady_moments(build_drift(m)));
        if (fault == FaultInjection::cm_scale) cm.v *= 0.5;
        lowest = std::min(lowest, physicality(cm.v).min_symplectic_eigenvalue);
    }
    return {"physicality", lowest >= 0.5 - 1e-9, timer.ms(),
            "min symplectic eigenvalue " + format_sci(lowest)};
}

SuiteResult check_monogamy(std::mt19937_64& rng, int n) {
    SuiteTimer timer;
    double lowest = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
        const LinearizedModel m = random_stable_model(rng);
        const CovarianceMatrix cm = assemble_cm(steady_moments(build_drift(m)));
        const ResidualContangle rc = residual_contangle_min(cm.v);
        for (double r : rc.report.residuals) lowest = std::min(lowest, r);
    }
    return {"monogamy", lowest >= -1e-9, timer.ms(), "min residual " + format_sci(lowest)};
}

SuiteResult check_phase_match(std::mt19937_64& rng, int n) {
    SuiteTimer timer;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_zero = 0.0, worst_equiv = 0.0, worst_bound = 0.0;
    bool off_match_positive = true;
    for (int k = 0; k < n; ++k) {
        const double r = 0.05 + 0.95 * u(rng);
        const double thd = 2.0 * M_PI * u(rng);
        const NoisePair matched = noise_params(r, thd, r, thd + M_PI);
        worst_zero = std::max({worst_zero, matched.n_s, std::abs(matched.m_s)});
        const NoisePair off = noise_params(r, thd, r, thd + M_PI + 0.01);
        off_match_positive = off_match_positive && off.n_s > 0.0;

        // general form vs the equal-strength reduced form
        const double dth = 2.0 * M_PI * u(rng);
        const NoisePair gen = noise_params(r, thd, r, thd + dth);
        const double n_red = 0.5 * std::pow(std::sinh(2.0 * r), 2) * (1.0 + std::cos(dth));
        const Complex m_red = 0.5 * std::polar(1.0, thd) * std::sinh(2.0 * r) *
                              (1.0 + std::polar(1.0, dth)) *
                              (std::pow(std::cosh(r), 2) +
                               std::polar(1.0, -dth) * std::pow(std::sinh(r), 2));
        worst_equiv = std::max({worst_equiv, std::abs(gen.n_s - n_red), std::abs(gen.m_s - m_red)});

        // physicality bound of the effective pair
        const NoisePair any = noise_params(u(rng), 2.0 * M_PI * u(rng), u(rng), 2.0 * M_PI * u(rng));
        worst_bound = std::max(worst_bound,
                               std::norm(any.m_s) - any.n_s * (any.n_s + 1.0));
    }
    const bool pass = worst_zero < 1e-14 && off_match_positive &&
                      worst_equiv < 1e-12 && worst_bound <= 1e-12;
    return {"phase-match", pass, timer.ms(),
            "matched residue " + format_sci(worst_zero) + ", form equivalence " +
                format_sci(worst_equiv) + ", bound excess " + format_sci(worst_bound)};
}

}  // namespace

std::vector<SuiteResult> run_self_check(FaultInjection fault, unsigned seed, int n_random) {
    std::mt19937_64 rng(seed);
    std::vector<SuiteResult> out;
    out.push_back(check_drift_vs_ode(rng, n_random, fault));
    out.push_back(check_steady_vs_evolve(rng, std::max(10, n_random / 10)));
    out.push_back(check_tmsv(fault));
    out.push_back(check_hermiticity(rng, n_random / 2));
    out.push_back(check_physicality(rng, n_random / 2, fault));
    out.push_back(check_monogamy(rng, n_random / 2));
    out.push_back(check_phase_match(rng, n_random));
    return out;
}

}  // namespace sqom
