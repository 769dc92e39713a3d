#pragma once

#include <array>

#include <Eigen/Dense>

#include "sqom/moments.hpp"

namespace sqom {

using CM6 = Eigen::Matrix<double, 6, 6>;
using CM4 = Eigen::Matrix<double, 4, 4>;

// Mode labels over the quadrature order (X, Y, Q1, P1, Q2, P2).
enum class Mode : int { cavity = 0, mirror1 = 1, mirror2 = 2 };

// Steady-state covariance matrix of the quadratures, vacuum variance 1/2.
struct CovarianceMatrix {
    CM6 v = CM6::Zero();
    double min_symplectic_eigenvalue = 0.0;
};

// Element-by-element map from the moment vector; throws
// NonHermitianMoments when the hermiticity pairings of the input are
// violated beyond 1e-10.
CovarianceMatrix assemble_cm(const MomentState& moments);

// The three symplectic eigenvalues |eig(i Omega V)|, ascending.
std::array<double, 3> symplectic_eigenvalues(const CM6& v);

struct PhysicalityReport {
    bool ok = false;
    double min_symplectic_eigenvalue = 0.0;
};

// Uncertainty-principle check: all symplectic eigenvalues >= 1/2 - 1e-9.
PhysicalityReport physicality(const CM6& v);

// 4x4 reduced CM of an ordered mode pair, in 2x2 block form
// [[A, C], [C^T, B]].
CM4 reduce(const CM6& v, Mode a, Mode b);

// 6x6 symplectic form for quadrature commutators [u_k, u_l] = i Omega_kl.
const CM6& symplectic_form();

}  // namespace sqom
