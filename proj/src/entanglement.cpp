#include "sqom/entanglement.hpp"

#include <cmath>

#include "sqom/errors.hpp"

namespace sqom {

namespace {

constexpr double kClamp = 1e-12;  // negativities below this count as zero

double clamp_small(double en) { return en < kClamp ? 0.0 : en; }

}  // namespace

PairNegativity log_negativity_detail(const CM6& v, Mode a, Mode b) {
    const CM4 r = reduce(v, a, b);
    const Eigen::Matrix2d A = r.block<2, 2>(0, 0);
    const Eigen::Matrix2d B = r.block<2, 2>(2, 2);
    const Eigen::Matrix2d C = r.block<2, 2>(0, 2);
    const double sigma = A.determinant() + B.determinant() - 2.0 * C.determinant();
    double disc = sigma * sigma - 4.0 * r.determinant();
    if (disc < -1e-9) {
        throw ComplexBranch("PT discriminant " + std::to_string(disc) + " < 0");
    }
    disc = std::max(disc, 0.0);
    const double inner = std::max(0.5 * (sigma - std::sqrt(disc)), 0.0);
    const double eta = std::sqrt(inner);
    PairNegativity out;
    out.eta_minus = eta;
    out.en = eta > 0.0 ? clamp_small(std::max(0.0, -std::log(2.0 * eta))) : 0.0;
    return out;
}

double log_negativity(const CM6& v, Mode a, Mode b) {
    return log_negativity_detail(v, a, b).en;
}

ContangleDetail one_vs_two_contangle_detail(const CM6& v, Mode single) {
    Eigen::Matrix<double, 6, 1> p = Eigen::Matrix<double, 6, 1>::Ones();
    p(2 * static_cast<int>(single) + 1) = -1.0;  // momentum sign flip
    const CM6 vt = p.asDiagonal() * v * p.asDiagonal();
    const auto nu = symplectic_eigenvalues(vt);
    ContangleDetail out;
    out.eta_minus = nu[0];
    const double en = nu[0] > 0.0 ? clamp_small(std::max(0.0, -std::log(2.0 * nu[0]))) : 0.0;
    out.etau = en * en;
    return out;
}

double one_vs_two_contangle(const CM6& v, Mode single) {
    return one_vs_two_contangle_detail(v, single).etau;
}

ResidualContangle residual_contangle_min(const CM6& v) {
    ResidualContangle rc;
    EntanglementReport& rep = rc.report;

    const PairNegativity cb1 = log_negativity_detail(v, Mode::cavity, Mode::mirror1);
    const PairNegativity cb2 = log_negativity_detail(v, Mode::cavity, Mode::mirror2);
    const PairNegativity b1b2 = log_negativity_detail(v, Mode::mirror1, Mode::mirror2);
    rep.en_cb1 = cb1.en;
    rep.en_cb2 = cb2.en;
    rep.en_b1b2 = b1b2.en;
    rep.eta_pair = {cb1.eta_minus, cb2.eta_minus, b1b2.eta_minus};

    const Mode modes[3] = {Mode::cavity, Mode::mirror1, Mode::mirror2};
    // pairwise contangles keyed by the singled-out mode
    const double pair_tau[3][2] = {
        {cb1.en * cb1.en, cb2.en * cb2.en},      // cavity | m1, cavity | m2
        {cb1.en * cb1.en, b1b2.en * b1b2.en},    // m1 | cavity, m1 | m2
        {cb2.en * cb2.en, b1b2.en * b1b2.en},    // m2 | cavity, m2 | m1
    };

    for (int i = 0; i < 3; ++i) {
        const ContangleDetail d = one_vs_two_contangle_detail(v, modes[i]);
        rep.etau_1v2[i] = d.etau;
        rep.eta_1v2[i] = d.eta_minus;
        rep.residuals[i] = d.etau - pair_tau[i][0] - pair_tau[i][1];
        if (rep.residuals[i] < -1e-6) {
            throw MonogamyViolation("contangle residual " + std::to_string(rep.residuals[i]));
        }
    }
    rep.r_min = *std::min_element(rep.residuals.begin(), rep.residuals.end());
    rc.r_min = rep.r_min;
    return rc;
}

}  // namespace sqom
