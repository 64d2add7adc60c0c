#pragma once

#include <Eigen/Dense>

namespace cvx1d {

struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

// 64-point Gauss-Legendre rule mapped to [a,b].
QuadratureRule gauss64(double a, double b);

// Composite trapezoid weights for n uniformly spaced nodes with spacing h.
Eigen::VectorXd trapezoid_weights(int n, double h);

}  // namespace cvx1d
