#include "sqom/moments.hpp"

#include <cmath>

#include "sqom/errors.hpp"

namespace sqom {

namespace {
const Complex kI(0.0, 1.0);
}

int conjugate_index(int k) {
    switch (k) {
        case kCdC: return kCdC;
        case kCCd: return kCCd;
        case kB1dB1: return kB1dB1;
        case kB1B1d: return kB1B1d;
        case kB2dB2: return kB2dB2;
        case kB2B2d: return kB2B2d;
        case kCC: return kCdCd;
        case kCdCd: return kCC;
        case kB1B1: return kB1dB1d;
        case kB1dB1d: return kB1B1;
        case kB2B2: return kB2dB2d;
        case kB2dB2d: return kB2B2;
        case kCB1: return kCdB1d;
        case kCdB1d: return kCB1;
        case kCB1d: return kCdB1;
        case kCdB1: return kCB1d;
        case kCB2: return kCdB2d;
        case kCdB2d: return kCB2;
        case kCB2d: return kCdB2;
        case kCdB2: return kCB2d;
        case kB1B2: return kB1dB2d;
        case kB1dB2d: return kB1B2;
        case kB1B2d: return kB1dB2;
        case kB1dB2: return kB1B2d;
    }
    throw Error("moment index out of range");
}

MomentSystem build_drift(const LinearizedModel& m) {
    const Complex L1 = m.lambda_1, L2 = m.lambda_2;
    const Complex L1c = std::conj(L1), L2c = std::conj(L2);
    const Complex nu = m.nu, nuc = std::conj(nu);
    const double ds = m.delta_s, kap = m.kappa;
    const double g1 = m.gamma_m1, g2 = m.gamma_m2;
    const double w1 = m.omega_m1, w2 = m.omega_m2;

    MomentSystem sys;
    DriftMatrix& M = sys.drift;
    M.setZero();
    sys.drive.setZero();

    // Occupation-type moments. The two members of each pair share the
    // same off-diagonal couplings, which preserves the commutator
    // offsets <A A+> - <A+ A> = 1 along the flow.
    for (int row : {kCdC, kCCd}) {
        M(row, row) = -kap;
        M(row, kCB1) = -kI * L1c;
        M(row, kCdB1d) = kI * L1;
        M(row, kCB1d) = -kI * L1c;
        M(row, kCdB1) = kI * L1;
        M(row, kCB2) = -kI * L2c;
        M(row, kCdB2d) = kI * L2;
        M(row, kCB2d) = -kI * L2c;
        M(row, kCdB2) = kI * L2;
    }
    sys.drive(kCdC) = kap * m.n_s;
    sys.drive(kCCd) = kap * (m.n_s + 1.0);

    for (int row : {kB1dB1, kB1B1d}) {
        M(row, row) = -g1;
        M(row, kCB1) = -kI * L1c;
        M(row, kCdB1d) = kI * L1;
        M(row, kCB1d) = kI * L1c;
        M(row, kCdB1) = -kI * L1;
        M(row, kB1B2d) = kI * nuc;
        M(row, kB1dB2) = -kI * nu;
    }
    sys.drive(kB1dB1) = g1 * m.nbar_m1;
    sys.drive(kB1B1d) = g1 * (m.nbar_m1 + 1.0);

    for (int row : {kB2dB2, kB2B2d}) {
        M(row, row) = -g2;
        M(row, kCB2) = -kI * L2c;
        M(row, kCdB2d) = kI * L2;
        M(row, kCB2d) = kI * L2c;
        M(row, kCdB2) = -kI * L2;
        M(row, kB1B2d) = -kI * nuc;
        M(row, kB1dB2) = kI * nu;
    }
    sys.drive(kB2dB2) = g2 * m.nbar_m2;
    sys.drive(kB2B2d) = g2 * (m.nbar_m2 + 1.0);

    // Anomalous cavity moments.
    M(kCC, kCC) = -(2.0 * kI * ds + kap);
    M(kCC, kCB1) = 2.0 * kI * L1;
    M(kCC, kCB1d) = 2.0 * kI * L1;
    M(kCC, kCB2) = 2.0 * kI * L2;
    M(kCC, kCB2d) = 2.0 * kI * L2;
    sys.drive(kCC) = kap * std::conj(m.m_s);

    M(kCdCd, kCdCd) = 2.0 * kI * ds - kap;
    M(kCdCd, kCdB1d) = -2.0 * kI * L1c;
    M(kCdCd, kCdB1) = -2.0 * kI * L1c;
    M(kCdCd, kCdB2d) = -2.0 * kI * L2c;
    M(kCdCd, kCdB2) = -2.0 * kI * L2c;
    sys.drive(kCdCd) = kap * m.m_s;

    // Anomalous mirror moments.
    M(kB1B1, kB1B1) = -(2.0 * kI * w1 + g1);
    M(kB1B1, kCB1) = 2.0 * kI * L1c;
    M(kB1B1, kCdB1) = 2.0 * kI * L1;
    M(kB1B1, kB1B2) = -2.0 * kI * nu;

    M(kB1dB1d, kB1dB1d) = 2.0 * kI * w1 - g1;
    M(kB1dB1d, kCdB1d) = -2.0 * kI * L1;
    M(kB1dB1d, kCB1d) = -2.0 * kI * L1c;
    M(kB1dB1d, kB1dB2d) = 2.0 * kI * nuc;

    M(kB2B2, kB2B2) = -(2.0 * kI * w2 + g2);
    M(kB2B2, kCB2) = 2.0 * kI * L2c;
    M(kB2B2, kCdB2) = 2.0 * kI * L2;
    M(kB2B2, kB1B2) = -2.0 * kI * nuc;

    M(kB2dB2d, kB2dB2d) = 2.0 * kI * w2 - g2;
    M(kB2dB2d, kCdB2d) = -2.0 * kI * L2;
    M(kB2dB2d, kCB2d) = -2.0 * kI * L2c;
    M(kB2dB2d, kB1dB2d) = 2.0 * kI * nu;

    // Cavity-mirror cross moments.
    M(kCB1, kCB1) = -(kI * (ds + w1) + 0.5 * (kap + g1));
    M(kCB1, kCdC) = kI * L1;
    M(kCB1, kB1B1d) = kI * L1;
    M(kCB1, kB1B1) = kI * L1;
    M(kCB1, kCC) = kI * L1c;
    M(kCB1, kB1B2d) = kI * L2;
    M(kCB1, kB1B2) = kI * L2;
    M(kCB1, kCB2) = -kI * nu;

    M(kCdB1d, kCdB1d) = kI * (ds + w1) - 0.5 * (kap + g1);
    M(kCdB1d, kCCd) = -kI * L1c;
    M(kCdB1d, kB1dB1) = -kI * L1c;
    M(kCdB1d, kB1dB1d) = -kI * L1c;
    M(kCdB1d, kCdCd) = -kI * L1;
    M(kCdB1d, kB1dB2) = -kI * L2c;
    M(kCdB1d, kB1dB2d) = -kI * L2c;
    M(kCdB1d, kCdB2d) = kI * nuc;

    M(kCB1d, kCB1d) = -(kI * (ds - w1) + 0.5 * (kap + g1));
    M(kCB1d, kB1dB1d) = kI * L1;
    M(kCB1d, kCdC) = -kI * L1;
    M(kCB1d, kB1dB1) = kI * L1;
    M(kCB1d, kCC) = -kI * L1c;
    M(kCB1d, kB1dB2d) = kI * L2;
    M(kCB1d, kB1dB2) = kI * L2;
    M(kCB1d, kCB2d) = kI * nuc;

    M(kCdB1, kCdB1) = kI * (ds - w1) - 0.5 * (kap + g1);
    M(kCdB1, kB1B1) = -kI * L1c;
    M(kCdB1, kCCd) = kI * L1c;
    M(kCdB1, kB1B1d) = -kI * L1c;
    M(kCdB1, kCdCd) = kI * L1;
    M(kCdB1, kB1B2) = -kI * L2c;
    M(kCdB1, kB1B2d) = -kI * L2c;
    M(kCdB1, kCdB2) = -kI * nu;

    M(kCB2, kCB2) = -(kI * (ds + w2) + 0.5 * (kap + g2));
    M(kCB2, kCdC) = kI * L2;
    M(kCB2, kB2B2d) = kI * L2;
    M(kCB2, kB2B2) = kI * L2;
    M(kCB2, kCC) = kI * L2c;
    M(kCB2, kB1dB2) = kI * L1;
    M(kCB2, kB1B2) = kI * L1;
    M(kCB2, kCB1) = -kI * nuc;

    M(kCdB2d, kCdB2d) = kI * (ds + w2) - 0.5 * (kap + g2);
    M(kCdB2d, kCCd) = -kI * L2c;
    M(kCdB2d, kB2dB2) = -kI * L2c;
    M(kCdB2d, kB2dB2d) = -kI * L2c;
    M(kCdB2d, kCdCd) = -kI * L2;
    M(kCdB2d, kB1B2d) = -kI * L1c;
    M(kCdB2d, kB1dB2d) = -kI * L1c;
    M(kCdB2d, kCdB1d) = kI * nu;

    M(kCB2d, kCB2d) = -(kI * (ds - w2) + 0.5 * (kap + g2));
    M(kCB2d, kB2dB2d) = kI * L2;
    M(kCB2d, kCdC) = -kI * L2;
    M(kCB2d, kB2dB2) = kI * L2;
    M(kCB2d, kCC) = -kI * L2c;
    M(kCB2d, kB1dB2d) = kI * L1;
    M(kCB2d, kB1B2d) = kI * L1;
    M(kCB2d, kCB1d) = kI * nu;

    M(kCdB2, kCdB2) = kI * (ds - w2) - 0.5 * (kap + g2);
    M(kCdB2, kB2B2) = -kI * L2c;
    M(kCdB2, kCCd) = kI * L2c;
    M(kCdB2, kB2B2d) = -kI * L2c;
    M(kCdB2, kCdCd) = kI * L2;
    M(kCdB2, kB1B2) = -kI * L1c;
    M(kCdB2, kB1dB2) = -kI * L1c;
    M(kCdB2, kCdB1) = -kI * nuc;

    // Mirror-mirror cross moments.
    M(kB1B2, kB1B2) = -(kI * (w1 + w2) + 0.5 * (g1 + g2));
    M(kB1B2, kCdB2) = kI * L1;
    M(kB1B2, kCB2) = kI * L1c;
    M(kB1B2, kCdB1) = kI * L2;
    M(kB1B2, kCB1) = kI * L2c;
    M(kB1B2, kB1B1) = -kI * nuc;
    M(kB1B2, kB2B2) = -kI * nu;

    M(kB1dB2d, kB1dB2d) = kI * (w1 + w2) - 0.5 * (g1 + g2);
    M(kB1dB2d, kCB2d) = -kI * L1c;
    M(kB1dB2d, kCdB2d) = -kI * L1;
    M(kB1dB2d, kCB1d) = -kI * L2c;
    M(kB1dB2d, kCdB1d) = -kI * L2;
    M(kB1dB2d, kB1dB1d) = kI * nu;
    M(kB1dB2d, kB2dB2d) = kI * nuc;

    M(kB1B2d, kB1B2d) = -(kI * (w1 - w2) + 0.5 * (g1 + g2));
    M(kB1B2d, kCdB2d) = kI * L1;
    M(kB1B2d, kCB2d) = kI * L1c;
    M(kB1B2d, kCdB1) = -kI * L2;
    M(kB1B2d, kCB1) = -kI * L2c;
    M(kB1B2d, kB1B1d) = kI * nu;
    M(kB1B2d, kB2B2d) = -kI * nu;

    M(kB1dB2, kB1dB2) = kI * (w1 - w2) - 0.5 * (g1 + g2);
    M(kB1dB2, kCB2) = -kI * L1c;
    M(kB1dB2, kCdB2) = -kI * L1;
    M(kB1dB2, kCB1d) = kI * L2c;
    M(kB1dB2, kCdB1d) = kI * L2;
    M(kB1dB2, kB1dB1) = -kI * nuc;
    M(kB1dB2, kB2dB2) = kI * nuc;

    return sys;
}

Stability stability(const DriftMatrix& drift) {
    Eigen::ComplexEigenSolver<DriftMatrix> es(drift, /*computeEigenvectors=*/false);
    double absc = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kNumMoments; ++i) {
        absc = std::max(absc, es.eigenvalues()(i).real());
    }
    return {absc < -1e-9, absc};
}

namespace {

// drift*x + drive accumulated in extended precision; plain double
// evaluation roundoff can dominate the true solve error near the
// residual tolerance.
MomentVector residual_vector(const MomentSystem& sys, const MomentVector& x) {
    using CL = std::complex<long double>;
    MomentVector out;
    for (int i = 0; i < kNumMoments; ++i) {
        CL acc(static_cast<long double>(sys.drive(i).real()),
               static_cast<long double>(sys.drive(i).imag()));
        for (int j = 0; j < kNumMoments; ++j) {
            const CL mij(static_cast<long double>(sys.drift(i, j).real()),
                         static_cast<long double>(sys.drift(i, j).imag()));
            const CL xj(static_cast<long double>(x(j).real()),
                        static_cast<long double>(x(j).imag()));
            acc += mij * xj;
        }
        out(i) = Complex(static_cast<double>(acc.real()),
                         static_cast<double>(acc.imag()));
    }
    return out;
}

}  // namespace

MomentState steady_moments(const MomentSystem& sys) {
    const Stability st = stability(sys.drift);
    if (st.spectral_abscissa >= 0.0) {
        throw Unstable("no steady state: spectral abscissa " +
                       std::to_string(st.spectral_abscissa));
    }
    Eigen::PartialPivLU<DriftMatrix> lu(sys.drift);
    MomentVector x = lu.solve(-sys.drive);
    MomentVector r = residual_vector(sys, x);
    for (int pass = 0; pass < 3; ++pass) {
        x -= lu.solve(r);
        r = residual_vector(sys, x);
    }

    const double rnorm = r.cwiseAbs().maxCoeff();
    const double dnorm = sys.drive.cwiseAbs().maxCoeff();
    if (dnorm > 0.0 && !(rnorm < 1e-10 * dnorm)) {
        throw SingularSystem("steady-state solve residual " + std::to_string(rnorm));
    }

    MomentState state;
    state.x = x;
    state.spectral_abscissa = st.spectral_abscissa;
    state.residual = rnorm;
    return state;
}

double drift_inf_norm(const DriftMatrix& drift) {
    return drift.cwiseAbs().rowwise().sum().maxCoeff();
}

MomentState evolve_moments(const MomentSystem& sys, const MomentVector& x0,
                           double t_final, double dt) {
    if (!(dt > 0.0) || !(t_final >= 0.0)) throw Error("bad integration window");
    const double dt_max = 0.05 / drift_inf_norm(sys.drift);
    if (dt > dt_max) {
        throw StepTooLarge("dt " + std::to_string(dt) + " exceeds bound " +
                           std::to_string(dt_max));
    }
    const long n_steps = t_final > 0.0 ? static_cast<long>(std::ceil(t_final / dt)) : 0;
    const double h = n_steps > 0 ? t_final / static_cast<double>(n_steps) : 0.0;

    MomentVector x = x0;
    MomentVector k1, k2, k3, k4;
    for (long s = 0; s < n_steps; ++s) {
        k1 = sys.drift * x + sys.drive;
        k2 = sys.drift * (x + 0.5 * h * k1) + sys.drive;
        k3 = sys.drift * (x + 0.5 * h * k2) + sys.drive;
        k4 = sys.drift * (x + h * k3) + sys.drive;
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    MomentState state;
    state.x = x;
    state.spectral_abscissa = stability(sys.drift).spectral_abscissa;
    state.residual = (sys.drift * x + sys.drive).cwiseAbs().maxCoeff();
    return state;
}

}  // namespace sqom
