#include "convexify1d/objective.hpp"

#include <cmath>

#include "convexify1d/errors.hpp"
#include "convexify1d/quadrature.hpp"

namespace cvx1d {

void ObjectiveParams::validate() const {
  if (!(lambda >= 1.0)) throw ArgumentError("lambda must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0,1)");
  if (R && !(*R > 0.0)) throw ArgumentError("ball radius must be positive");
}

Objective::Objective(const GalerkinSystem& system, int Nx, ObjectiveParams params)
    : system_(&system), Nx_(Nx), params_(params) {
  params_.validate();
  if (Nx < 4) throw ArgumentError("objective needs Nx >= 4");
  const double h = 1.0 / Nx;
  w_ = trapezoid_weights(Nx + 1, h);
  cw_.resize(Nx + 1);
  for (int j = 0; j <= Nx; ++j) cw_(j) = w_(j) * std::exp(2.0 * params_.lambda * (1.0 - j * h));
}

double Objective::carleman_term(const StateVector& y) const {
  const StateVector r = diff2(y) + system_->F(diff1(y));
  return (r.cwiseAbs2().colwise().sum() * cw_)(0);
}

double Objective::h2_norm_sq(const StateVector& y) const {
  const Eigen::RowVectorXd pointwise =
      y.cwiseAbs2().colwise().sum() + diff1(y).cwiseAbs2().colwise().sum() + diff2(y).cwiseAbs2().colwise().sum();
  return pointwise.dot(w_);
}

double Objective::value(const StateVector& y) const {
  const StateVector z = diff1(y), yy = diff2(y);
  const StateVector r = yy + system_->F(z);
  const Eigen::RowVectorXd res = r.cwiseAbs2().colwise().sum();
  const Eigen::RowVectorXd reg =
      y.cwiseAbs2().colwise().sum() + z.cwiseAbs2().colwise().sum() + yy.cwiseAbs2().colwise().sum();
  return res.dot(cw_) + params_.alpha * reg.dot(w_);
}

StateVector Objective::gradient(const StateVector& y) const {
  const StateVector z = diff1(y), yy = diff2(y);
  const StateVector r = yy + system_->F(z);
  const StateVector wr = r * cw_.asDiagonal();
  StateVector through_f(y.rows(), y.cols());
  for (Eigen::Index j = 0; j < y.cols(); ++j)
    through_f.col(j) = system_->jacobian(z.col(j)).adjoint() * wr.col(j);
  StateVector g = 2.0 * (diff2_adjoint(wr) + diff1_adjoint(through_f));
  const auto W = w_.asDiagonal();
  g += 2.0 * params_.alpha * (y * W + diff1_adjoint(z * W) + diff2_adjoint(yy * W));
  return g;
}

double real_inner(const StateVector& a, const StateVector& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

BoundaryConstraint::BoundaryConstraint(Eigen::VectorXcd f0, Eigen::VectorXcd f1, int Nx)
    : f0_(std::move(f0)), f1_(std::move(f1)), Nx_(Nx) {
  if (Nx < 4) throw ArgumentError("boundary elimination needs Nx >= 4");
  if (f0_.size() != f1_.size()) throw ArgumentError("f0 and f1 differ in length");
}

BoundaryConstraint BoundaryConstraint::homogeneous(int N, int Nx) {
  return {Eigen::VectorXcd::Zero(N), Eigen::VectorXcd::Zero(N), Nx};
}

StateVector BoundaryConstraint::expand(const Eigen::MatrixXcd& free) const {
  if (free.rows() != N() || free.cols() != free_nodes()) throw ArgumentError("free-node block has wrong shape");
  const double h = 1.0 / Nx_;
  StateVector y(N(), Nx_ + 1);
  y.col(0) = f0_;
  y.col(1) = free.col(0);
  y.middleCols(3, Nx_ - 3) = free.rightCols(Nx_ - 3);
  y.col(2) = 4.0 * y.col(1) - 3.0 * f0_ - 2.0 * h * f1_;
  y.col(Nx_) = (4.0 * y.col(Nx_ - 1) - y.col(Nx_ - 2)) / 3.0;
  return y;
}

Eigen::MatrixXcd BoundaryConstraint::restrict(const StateVector& y) const {
  Eigen::MatrixXcd free(N(), free_nodes());
  free.col(0) = y.col(1);
  free.rightCols(Nx_ - 3) = y.middleCols(3, Nx_ - 3);
  return free;
}

Eigen::MatrixXcd BoundaryConstraint::reduce_gradient(const StateVector& g) const {
  StateVector t = g;
  // Reverse order of expand: y(Nx) first, then y(2).
  t.col(Nx_ - 1) += (4.0 / 3.0) * t.col(Nx_);
  t.col(Nx_ - 2) -= (1.0 / 3.0) * t.col(Nx_);
  t.col(1) += 4.0 * t.col(2);
  return restrict(t);
}

double eval_J(const StateVector& y, const Objective& obj) { return obj.value(y); }

StateVector grad_J(const StateVector& y, const Objective& obj) { return obj.gradient(y); }

double eval_Phi(const StateVector& p, const SeedFunction& f, const Objective& obj) { return obj.value(p + f.f); }

StateVector project_ball(const StateVector& p, double R, const Objective& obj) {
  if (!(R > 0.0)) throw ArgumentError("ball radius must be positive");
  const double nrm = std::sqrt(obj.h2_norm_sq(p));
  return nrm <= R ? p : StateVector(p * (R / nrm));
}

double convexity_probe(const StateVector& y1, const StateVector& y2, const Objective& obj) {
  return obj.value(y2) - obj.value(y1) - real_inner(obj.gradient(y1), y2 - y1);
}

}  // namespace cvx1d
