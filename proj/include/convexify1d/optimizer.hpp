#pragma once

#include <functional>
#include <string>
#include <vector>

#include "convexify1d/objective.hpp"

namespace cvx1d {

struct ScheduleParams {
  double step0 = 1e-7;
  double shrink = 10.0;
  int grow_every = 1000;
  double grow = 10.0;
  int max_iter = 15000;
  double min_step = 1e-14;
  int restart_every = 50;

  void validate() const;
};

enum class Termination { iteration_cap, step_floor };
std::string to_string(Termination t);

struct TraceRow {
  int iter;
  double J;
  double step;
};

struct RunTrace {
  int iterations = 0;
  std::vector<double> accepted;  // objective after each accepted step, starting with J(x0)
  double final_step = 0.0;
  double best_value = 0.0;
  Termination termination = Termination::iteration_cap;
  std::vector<TraceRow> rows;  // filled when recording is enabled
};

// Works on a flat matrix of free degrees of freedom.
struct ObjectiveHandle {
  std::function<double(const Eigen::MatrixXcd&)> value;
  std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)> gradient;
  std::function<double(const Eigen::MatrixXcd&)> norm;  // used by the ball projection
};

// J restricted to states satisfying the boundary constraint.
ObjectiveHandle make_handle(const Objective& obj, const BoundaryConstraint& bc);
// Phi(p) = J(p + f) over p with a homogeneous boundary triple.
ObjectiveHandle make_phi_handle(const Objective& obj, const SeedFunction& seed);

struct MinimizeResult {
  Eigen::MatrixXcd x;
  RunTrace trace;
};

MinimizeResult minimize_cg(const Eigen::MatrixXcd& x0, const ObjectiveHandle& f,
                           const ScheduleParams& schedule, bool record = false);

MinimizeResult minimize_gradient_projection(const Eigen::MatrixXcd& p0, double gamma, double R,
                                            const ObjectiveHandle& f, int max_iter,
                                            bool record = false);

}  // namespace cvx1d
