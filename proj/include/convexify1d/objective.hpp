#pragma once

#include <optional>

#include "convexify1d/galerkin.hpp"

namespace cvx1d {

struct ObjectiveParams {
  double lambda = 3.0;
  double alpha = 0.05;
  std::optional<double> R;

  void validate() const;
};

// e^{2 lambda} T(|y'' + F(y')|^2 e^{-2 lambda x}) + alpha * H2(y), T = trapezoid rule on [0,1].
class Objective {
 public:
  Objective(const GalerkinSystem& system, int Nx, ObjectiveParams params);

  double value(const StateVector& y) const;
  // Complex form of the real gradient: dJ/dRe + i dJ/dIm at every node. The
  // directional derivative along h is real_inner(gradient(y), h).
  StateVector gradient(const StateVector& y) const;
  double h2_norm_sq(const StateVector& y) const;
  double carleman_term(const StateVector& y) const;

  int Nx() const { return Nx_; }
  int N() const { return system_->N; }
  const ObjectiveParams& params() const { return params_; }
  const GalerkinSystem& system() const { return *system_; }
  const Eigen::VectorXd& trapezoid() const { return w_; }
  const Eigen::VectorXd& carleman_weight() const { return cw_; }

 private:
  const GalerkinSystem* system_;
  int Nx_;
  ObjectiveParams params_;
  Eigen::VectorXd w_, cw_;
};

double real_inner(const StateVector& a, const StateVector& b);

// Eliminates y(0) = f0, y'(0) = f1 and y'(1) = 0 (one-sided stencils) so that
// the remaining free nodes are 1, 3, 4, ..., Nx-1.
class BoundaryConstraint {
 public:
  BoundaryConstraint(Eigen::VectorXcd f0, Eigen::VectorXcd f1, int Nx);
  static BoundaryConstraint homogeneous(int N, int Nx);

  int free_nodes() const { return Nx_ - 2; }
  const Eigen::VectorXcd& f0() const { return f0_; }
  const Eigen::VectorXcd& f1() const { return f1_; }
  int N() const { return static_cast<int>(f0_.size()); }
  int Nx() const { return Nx_; }
  StateVector expand(const Eigen::MatrixXcd& free) const;
  Eigen::MatrixXcd restrict(const StateVector& y) const;
  // Chain rule through expand: gradient with respect to the free nodes.
  Eigen::MatrixXcd reduce_gradient(const StateVector& g) const;
  // Overwrites the eliminated nodes of y so that it satisfies the constraints.
  StateVector enforce(const StateVector& y) const { return expand(restrict(y)); }

 private:
  Eigen::VectorXcd f0_, f1_;
  int Nx_;
};

double eval_J(const StateVector& y, const Objective& obj);
StateVector grad_J(const StateVector& y, const Objective& obj);
double eval_Phi(const StateVector& p, const SeedFunction& f, const Objective& obj);
StateVector project_ball(const StateVector& p, double R, const Objective& obj);
double convexity_probe(const StateVector& y1, const StateVector& y2, const Objective& obj);

}  // namespace cvx1d
