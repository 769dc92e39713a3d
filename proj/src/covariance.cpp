#include "sqom/covariance.hpp"

#include <algorithm>
#include <cmath>

#include "sqom/errors.hpp"

namespace sqom {

namespace {

constexpr double kHermTol = 1e-10;

void check_hermiticity(const MomentVector& x) {
    double worst = 0.0;
    for (int k : {kCdC, kB1dB1, kB2dB2}) {
        worst = std::max(worst, std::abs(x(k).imag()));
    }
    for (int k = 0; k < kNumMoments; ++k) {
        const int kc = conjugate_index(k);
        if (kc <= k) continue;
        worst = std::max(worst, std::abs(x(kc) - std::conj(x(k))));
    }
    // commutator offsets are part of the same consistency family
    worst = std::max(worst, std::abs(x(kCCd) - x(kCdC) - 1.0));
    worst = std::max(worst, std::abs(x(kB1B1d) - x(kB1dB1) - 1.0));
    worst = std::max(worst, std::abs(x(kB2B2d) - x(kB2dB2) - 1.0));
    // scale-aware gate: large thermal occupations push the moments to
    // 1e3-1e4 while the pairing error of a converged solve stays at the
    // relative roundoff level
    const double tol = kHermTol * std::max(1.0, x.cwiseAbs().maxCoeff());
    if (worst > tol) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.3e (tolerance %.3e)", worst, tol);
        throw NonHermitianMoments(std::string("moment hermiticity residue ") + buf);
    }
}

}  // namespace

CovarianceMatrix assemble_cm(const MomentState& moments) {
    const MomentVector& x = moments.x;
    check_hermiticity(x);

    auto re = [&x](int k) { return x(k).real(); };
    auto im = [&x](int k) { return x(k).imag(); };

    CM6 v = CM6::Zero();
    v(0, 0) = re(kCC) + re(kCdC) + 0.5;
    v(1, 1) = -re(kCC) + re(kCdC) + 0.5;
    v(2, 2) = re(kB1B1) + re(kB1dB1) + 0.5;
    v(3, 3) = -re(kB1B1) + re(kB1dB1) + 0.5;
    v(4, 4) = re(kB2B2) + re(kB2dB2) + 0.5;
    v(5, 5) = -re(kB2B2) + re(kB2dB2) + 0.5;

    v(0, 1) = im(kCC);
    v(2, 3) = im(kB1B1);
    v(4, 5) = im(kB2B2);

    v(0, 2) = re(kCB1) + re(kCB1d);
    v(0, 3) = im(kCB1) - im(kCB1d);
    v(0, 4) = re(kCB2) + re(kCB2d);
    v(0, 5) = im(kCB2) - im(kCB2d);
    v(1, 2) = im(kCB1) + im(kCB1d);
    v(1, 3) = -re(kCB1) + re(kCB1d);
    v(1, 4) = im(kCB2) + im(kCB2d);
    v(1, 5) = -re(kCB2) + re(kCB2d);
    v(2, 4) = re(kB1B2) + re(kB1B2d);
    v(2, 5) = im(kB1B2) - im(kB1B2d);
    v(3, 4) = im(kB1B2) + im(kB1B2d);
    v(3, 5) = -re(kB1B2) + re(kB1B2d);

    // symmetric completion
    for (int i = 0; i < 6; ++i) {
        for (int j = i + 1; j < 6; ++j) {
            v(j, i) = v(i, j);
        }
    }

    CovarianceMatrix cm;
    cm.v = v;
    cm.min_symplectic_eigenvalue = symplectic_eigenvalues(v)[0];
    return cm;
}

const CM6& symplectic_form() {
    static const CM6 omega = [] {
        CM6 o = CM6::Zero();
        for (int m = 0; m < 3; ++m) {
            o(2 * m, 2 * m + 1) = 1.0;
            o(2 * m + 1, 2 * m) = -1.0;
        }
        return o;
    }();
    return omega;
}

std::array<double, 3> symplectic_eigenvalues(const CM6& v) {
    Eigen::Matrix<Complex, 6, 6> iov = Complex(0.0, 1.0) * (symplectic_form() * v).cast<Complex>();
    Eigen::ComplexEigenSolver<Eigen::Matrix<Complex, 6, 6>> es(iov, false);
    std::array<double, 6> mags;
    for (int i = 0; i < 6; ++i) mags[i] = std::abs(es.eigenvalues()(i));
    std::sort(mags.begin(), mags.end());
    // eigenvalues come in +/- pairs of equal magnitude
    return {mags[0], mags[2], mags[4]};
}

PhysicalityReport physicality(const CM6& v) {
    const auto nu = symplectic_eigenvalues(v);
    return {nu[0] >= 0.5 - 1e-9, nu[0]};
}

CM4 reduce(const CM6& v, Mode a, Mode b) {
    if (a == b) throw Error("reduce requires two distinct modes");
    const int ia = 2 * static_cast<int>(a);
    const int ib = 2 * static_cast<int>(b);
    CM4 out;
    const int rows[4] = {ia, ia + 1, ib, ib + 1};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            out(i, j) = v(rows[i], rows[j]);
        }
    }
    return out;
}

}  // namespace sqom
