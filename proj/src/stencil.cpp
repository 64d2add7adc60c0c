#include "convexify1d/stencil.hpp"

#include "convexify1d/errors.hpp"

namespace cvx1d {

namespace {
void check_columns(Eigen::Index n) {
  if (n < 5) throw ArgumentError("finite differences need at least 5 grid nodes");
}
}  // namespace

StateVector diff1(const StateVector& y) {
  const Eigen::Index n = y.cols();
  check_columns(n);
  const double h = grid_step(n);
  StateVector d(y.rows(), n);
  d.middleCols(1, n - 2) = (y.rightCols(n - 2) - y.leftCols(n - 2)) / (2 * h);
  d.col(0) = (-3.0 * y.col(0) + 4.0 * y.col(1) - y.col(2)) / (2 * h);
  d.col(n - 1) = (3.0 * y.col(n - 1) - 4.0 * y.col(n - 2) + y.col(n - 3)) / (2 * h);
  return d;
}

StateVector diff2(const StateVector& y) {
  const Eigen::Index n = y.cols();
  check_columns(n);
  const double h2 = grid_step(n) * grid_step(n);
  StateVector d(y.rows(), n);
  d.middleCols(1, n - 2) = (y.rightCols(n - 2) - 2.0 * y.middleCols(1, n - 2) + y.leftCols(n - 2)) / h2;
  d.col(0) = (2.0 * y.col(0) - 5.0 * y.col(1) + 4.0 * y.col(2) - y.col(3)) / h2;
  d.col(n - 1) = (2.0 * y.col(n - 1) - 5.0 * y.col(n - 2) + 4.0 * y.col(n - 3) - y.col(n - 4)) / h2;
  return d;
}

StateVector diff1_adjoint(const StateVector& g) {
  const Eigen::Index n = g.cols();
  check_columns(n);
  const double c = 1.0 / (2 * grid_step(n));
  StateVector out = StateVector::Zero(g.rows(), n);
  for (Eigen::Index j = 1; j < n - 1; ++j) {
    out.col(j - 1) -= c * g.col(j);
    out.col(j + 1) += c * g.col(j);
  }
  out.col(0) += -3.0 * c * g.col(0);
  out.col(1) += 4.0 * c * g.col(0);
  out.col(2) += -1.0 * c * g.col(0);
  out.col(n - 1) += 3.0 * c * g.col(n - 1);
  out.col(n - 2) += -4.0 * c * g.col(n - 1);
  out.col(n - 3) += 1.0 * c * g.col(n - 1);
  return out;
}

StateVector diff2_adjoint(const StateVector& g) {
  const Eigen::Index n = g.cols();
  check_columns(n);
  const double c = 1.0 / (grid_step(n) * grid_step(n));
  StateVector out = StateVector::Zero(g.rows(), n);
  for (Eigen::Index j = 1; j < n - 1; ++j) {
    out.col(j - 1) += c * g.col(j);
    out.col(j) -= 2.0 * c * g.col(j);
    out.col(j + 1) += c * g.col(j);
  }
  const double e[4] = {2.0, -5.0, 4.0, -1.0};
  for (int i = 0; i < 4; ++i) {
    out.col(i) += e[i] * c * g.col(0);
    out.col(n - 1 - i) += e[i] * c * g.col(n - 1);
  }
  return out;
}

Eigen::MatrixXd diff1_matrix(int n) {
  return diff1(StateVector::Identity(n, n)).real().transpose();
}

Eigen::MatrixXd diff2_matrix(int n) {
  return diff2(StateVector::Identity(n, n)).real().transpose();
}

Eigen::VectorXd uniform_nodes(int Nx) {
  Eigen::VectorXd x(Nx + 1);
  for (int j = 0; j <= Nx; ++j) x(j) = static_cast<double>(j) / Nx;
  return x;
}

}  // namespace cvx1d
