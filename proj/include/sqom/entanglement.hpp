#pragma once

#include "sqom/covariance.hpp"

namespace sqom {

// Every pairwise and one-vs-two entanglement measure of a three-mode CM.
struct EntanglementReport {
    double en_cb1 = 0.0;    // log-negativity, cavity | mirror 1
    double en_cb2 = 0.0;    // log-negativity, cavity | mirror 2
    double en_b1b2 = 0.0;   // log-negativity, mirror 1 | mirror 2
    std::array<double, 3> etau_1v2{};   // contangle E_tau^{r|st}, r = cavity, m1, m2
    std::array<double, 3> residuals{};  // E^{r|st} - E^{r|s} - E^{r|t}
    double r_min = 0.0;                 // min of residuals
    std::array<double, 3> eta_pair{};   // pairwise PT symplectic minima (cb1, cb2, b1b2)
    std::array<double, 3> eta_1v2{};    // one-vs-two PT symplectic minima
};

// Logarithmic negativity of an ordered mode pair via the closed
// determinant formula on the 4x4 reduced CM. Values below 1e-12 clamp
// to exactly 0. Throws ComplexBranch when the discriminant is
// significantly negative (unphysical input).
double log_negativity(const CM6& v, Mode a, Mode b);

// Same, also reporting the PT symplectic minimum eta_0^-.
struct PairNegativity {
    double en = 0.0;
    double eta_minus = 0.0;
};
PairNegativity log_negativity_detail(const CM6& v, Mode a, Mode b);

// One-vs-two contangle [max(0, -ln 2 eta)]^2 with eta the minimum
// symplectic eigenvalue of the partially transposed full CM.
double one_vs_two_contangle(const CM6& v, Mode single);

struct ContangleDetail {
    double etau = 0.0;
    double eta_minus = 0.0;
};
ContangleDetail one_vs_two_contangle_detail(const CM6& v, Mode single);

struct ResidualContangle {
    double r_min = 0.0;
    EntanglementReport report;
};

// Minimum residual contangle over the three one-vs-two splits. Throws
// MonogamyViolation when any residual is below -1e-6.
ResidualContangle residual_contangle_min(const CM6& v);

}  // namespace sqom
