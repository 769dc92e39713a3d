#pragma once

#include <string>
#include <vector>

#include "sqom/covariance.hpp"

namespace sqom {

// Quadrature labels matching the CM row order.
enum class Quadrature : int { X = 0, Y, Q1, P1, Q2, P2 };

const char* quadrature_name(Quadrature q);

struct Ellipse {
    double a = 0.0;      // major semi-axis of the 1/e contour
    double b = 0.0;      // minor semi-axis
    double angle = 0.0;  // principal angle of the major axis (rad)
    bool squeezed = false;  // min semi-axis < 1 - 1e-9 (vacuum circle = 1)
};

// Two-dimensional marginal of the steady-state Wigner function.
struct Gaussian2D {
    Eigen::Matrix2d reduced_cm = Eigen::Matrix2d::Zero();
    Quadrature qi = Quadrature::X;
    Quadrature qj = Quadrature::Y;
    double peak = 0.0;  // 1 / (2 pi sqrt(det))
    Ellipse ellipse;
};

// Exact Gaussian marginalization: the 2x2 submatrix of the selected
// quadrature pair. Throws DegenerateProjection when det <= 1e-14.
Gaussian2D project(const CovarianceMatrix& cm, Quadrature qi, Quadrature qj);

// 1/e contour of the projected Gaussian: semi-axes sqrt(2 lambda_i) and
// principal angle from the eigen-decomposition of the reduced CM.
Ellipse contour_1e(const Gaussian2D& g);

// Uniform n x n sampling of W over [-half_width, half_width]^2,
// row-major with the first coordinate fastest.
struct WignerGrid {
    int n = 0;
    double half_width = 0.0;
    std::vector<double> w;
};

WignerGrid sample_grid(const Gaussian2D& g, double half_width, int n);

}  // namespace sqom
