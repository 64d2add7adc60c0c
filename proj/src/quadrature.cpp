#include "convexify1d/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

namespace cvx1d {

QuadratureRule gauss64(double a, double b) {
  using rule = boost::math::quadrature::gauss<double, 64>;
  const auto& xs = rule::abscissa();
  const auto& ws = rule::weights();
  const int half = static_cast<int>(xs.size());
  QuadratureRule q;
  q.nodes.resize(2 * half);
  q.weights.resize(2 * half);
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  for (int i = 0; i < half; ++i) {
    q.nodes(half - 1 - i) = c - r * xs[i];
    q.weights(half - 1 - i) = r * ws[i];
    q.nodes(half + i) = c + r * xs[i];
    q.weights(half + i) = r * ws[i];
  }
  return q;
}

Eigen::VectorXd trapezoid_weights(int n, double h) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, h);
  w(0) = w(n - 1) = 0.5 * h;
  return w;
}

}  // namespace cvx1d
