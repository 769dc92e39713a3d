#include "oracles.hpp"

#include <Eigen/Dense>

namespace sqom::testing {

CM6 lyapunov_cm(const LinearizedModel& m) {
    const double l1r = m.lambda_1.real(), l1i = m.lambda_1.imag();
    const double l2r = m.lambda_2.real(), l2i = m.lambda_2.imag();
    const double nr = m.nu.real(), ni = m.nu.imag();

    CM6 a = CM6::Zero();
    a(0, 0) = -0.5 * m.kappa;
    a(0, 1) = m.delta_s;
    a(0, 2) = -2.0 * l1i;
    a(0, 4) = -2.0 * l2i;
    a(1, 0) = -m.delta_s;
    a(1, 1) = -0.5 * m.kappa;
    a(1, 2) = 2.0 * l1r;
    a(1, 4) = 2.0 * l2r;
    a(2, 2) = -0.5 * m.gamma_m1;
    a(2, 3) = m.omega_m1;
    a(2, 4) = ni;
    a(2, 5) = nr;
    a(3, 0) = 2.0 * l1r;
    a(3, 1) = 2.0 * l1i;
    a(3, 2) = -m.omega_m1;
    a(3, 3) = -0.5 * m.gamma_m1;
    a(3, 4) = -nr;
    a(3, 5) = ni;
    a(4, 2) = -ni;
    a(4, 3) = nr;
    a(4, 4) = -0.5 * m.gamma_m2;
    a(4, 5) = m.omega_m2;
    a(5, 0) = 2.0 * l2r;
    a(5, 1) = 2.0 * l2i;
    a(5, 2) = -nr;
    a(5, 3) = -ni;
    a(5, 4) = -m.omega_m2;
    a(5, 5) = -0.5 * m.gamma_m2;

    CM6 d = CM6::Zero();
    d(0, 0) = m.kappa * (m.n_s + 0.5 + m.m_s.real());
    d(1, 1) = m.kappa * (m.n_s + 0.5 - m.m_s.real());
    d(0, 1) = d(1, 0) = -m.kappa * m.m_s.imag();
    d(2, 2) = d(3, 3) = m.gamma_m1 * (m.nbar_m1 + 0.5);
    d(4, 4) = d(5, 5) = m.gamma_m2 * (m.nbar_m2 + 0.5);

    // vec(AV + VA^T) = (I (x) A + A (x) I) vec(V), column-major
    Eigen::Matrix<double, 36, 36> big = Eigen::Matrix<double, 36, 36>::Zero();
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            for (int k = 0; k < 6; ++k) {
                big(i + 6 * j, k + 6 * j) += a(i, k);  // I (x) A
                big(i + 6 * j, i + 6 * k) += a(j, k);  // A (x) I
            }
        }
    }
    Eigen::Matrix<double, 36, 1> rhs;
    for (int j = 0; j < 6; ++j) {
        for (int i = 0; i < 6; ++i) rhs(i + 6 * j) = -d(i, j);
    }
    const Eigen::Matrix<double, 36, 1> sol = big.partialPivLu().solve(rhs);
    CM6 v;
    for (int j = 0; j < 6; ++j) {
        for (int i = 0; i < 6; ++i) v(i, j) = sol(i + 6 * j);
    }
    return 0.5 * (v + v.transpose());
}

CM6 tmsv_embedded(double s, Mode a, Mode b) {
    CM6 v = 0.5 * CM6::Identity();
    const int ia = 2 * static_cast<int>(a), ib = 2 * static_cast<int>(b);
    const double ch = 0.5 * std::cosh(2.0 * s), sh = 0.5 * std::sinh(2.0 * s);
    v(ia, ia) = v(ia + 1, ia + 1) = ch;
    v(ib, ib) = v(ib + 1, ib + 1) = ch;
    v(ia, ib) = v(ib, ia) = sh;
    v(ia + 1, ib + 1) = v(ib + 1, ia + 1) = -sh;
    return v;
}

}  // namespace sqom::testing
