#include "sqom/wigner.hpp"

#include <cmath>

#include "sqom/errors.hpp"

namespace sqom {

const char* quadrature_name(Quadrature q) {
    switch (q) {
        case Quadrature::X: return "X";
        case Quadrature::Y: return "Y";
        case Quadrature::Q1: return "Q1";
        case Quadrature::P1: return "P1";
        case Quadrature::Q2: return "Q2";
        case Quadrature::P2: return "P2";
    }
    return "?";
}

Gaussian2D project(const CovarianceMatrix& cm, Quadrature qi, Quadrature qj) {
    if (qi == qj) throw Error("projection requires two distinct quadratures");
    const int i = static_cast<int>(qi), j = static_cast<int>(qj);
    Gaussian2D g;
    g.qi = qi;
    g.qj = qj;
    g.reduced_cm << cm.v(i, i), cm.v(i, j), cm.v(j, i), cm.v(j, j);
    const double det = g.reduced_cm.determinant();
    if (det <= 1e-14) {
        throw DegenerateProjection("projection determinant " + std::to_string(det));
    }
    g.peak = 1.0 / (2.0 * M_PI * std::sqrt(det));
    g.ellipse = contour_1e(g);
    return g;
}

Ellipse contour_1e(const Gaussian2D& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(g.reduced_cm);
    const double lo = es.eigenvalues()(0), hi = es.eigenvalues()(1);
    Ellipse e;
    e.a = std::sqrt(2.0 * hi);
    e.b = std::sqrt(2.0 * std::max(lo, 0.0));
    const Eigen::Vector2d major = es.eigenvectors().col(1);
    e.angle = std::atan2(major(1), major(0));
    e.squeezed = e.b < 1.0 - 1e-9;
    return e;
}

WignerGrid sample_grid(const Gaussian2D& g, double half_width, int n) {
    if (n < 2 || !(half_width > 0.0)) throw Error("bad grid spec");
    const Eigen::Matrix2d inv = g.reduced_cm.inverse();
    WignerGrid grid;
    grid.n = n;
    grid.half_width = half_width;
    grid.w.resize(static_cast<size_t>(n) * n);
    const double step = 2.0 * half_width / (n - 1);
    for (int jy = 0; jy < n; ++jy) {
        const double y = -half_width + step * jy;
        for (int jx = 0; jx < n; ++jx) {
            const double x = -half_width + step * jx;
            const double q = inv(0, 0) * x * x + 2.0 * inv(0, 1) * x * y + inv(1, 1) * y * y;
            grid.w[static_cast<size_t>(jy) * n + jx] = g.peak * std::exp(-0.5 * q);
        }
    }
    return grid;
}

}  // namespace sqom
