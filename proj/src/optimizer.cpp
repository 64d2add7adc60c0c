#include "convexify1d/optimizer.hpp"

#include <cmath>

#include "convexify1d/errors.hpp"

namespace cvx1d {

void ScheduleParams::validate() const {
  if (!(step0 > 0 && shrink > 0 && grow > 0 && min_step > 0)) throw ArgumentError("schedule values must be positive");
  if (max_iter < 1 || grow_every < 1 || restart_every < 1) throw ArgumentError("schedule counts must be >= 1");
}

std::string to_string(Termination t) {
  return t == Termination::iteration_cap ? "iteration_cap" : "step_floor";
}

ObjectiveHandle make_handle(const Objective& obj, const BoundaryConstraint& bc) {
  ObjectiveHandle h;
  h.value = [&obj, bc](const Eigen::MatrixXcd& z) { return obj.value(bc.expand(z)); };
  h.gradient = [&obj, bc](const Eigen::MatrixXcd& z) { return bc.reduce_gradient(obj.gradient(bc.expand(z))); };
  h.norm = [&obj, bc](const Eigen::MatrixXcd& z) { return std::sqrt(obj.h2_norm_sq(bc.expand(z))); };
  return h;
}

ObjectiveHandle make_phi_handle(const Objective& obj, const SeedFunction& seed) {
  const BoundaryConstraint bc = BoundaryConstraint::homogeneous(obj.N(), obj.Nx());
  const StateVector f = seed.f;
  ObjectiveHandle h;
  h.value = [&obj, bc, f](const Eigen::MatrixXcd& z) { return obj.value(bc.expand(z) + f); };
  h.gradient = [&obj, bc, f](const Eigen::MatrixXcd& z) {
    return bc.reduce_gradient(obj.gradient(bc.expand(z) + f));
  };
  h.norm = [&obj, bc](const Eigen::MatrixXcd& z) { return std::sqrt(obj.h2_norm_sq(bc.expand(z))); };
  return h;
}

MinimizeResult minimize_cg(const Eigen::MatrixXcd& x0, const ObjectiveHandle& f, const ScheduleParams& sch,
                           bool record) {
  sch.validate();
  MinimizeResult res;
  Eigen::MatrixXcd x = x0;
  double J = f.value(x);
  if (!std::isfinite(J)) throw ArgumentError("objective is not finite at the starting point");
  Eigen::MatrixXcd g = f.gradient(x);
  Eigen::MatrixXcd d = -g;
  double step = sch.step0;
  int it = 0, since_restart = 0;
  RunTrace& tr = res.trace;
  tr.accepted.push_back(J);

  while (it < sch.max_iter && step >= sch.min_step) {
    const Eigen::MatrixXcd cand = x + step * d;
    const double Jn = f.value(cand);
    // Equal values count as rejections so a stationary start ends on the step floor.
    if (!(Jn < J)) {
      step /= sch.shrink;
      d = -g;
      since_restart = 0;
    } else {
      x = cand;
      J = Jn;
      tr.accepted.push_back(J);
      const Eigen::MatrixXcd gn = f.gradient(x);
      if (++since_restart % sch.restart_every == 0) {
        d = -gn;
      } else {
        // Polak-Ribiere with the usual nonnegativity clamp.
        const double gg = g.squaredNorm();
        const double beta =
            gg > 0.0 ? std::max(0.0, (gn.conjugate().cwiseProduct(gn - g)).sum().real() / gg) : 0.0;
        d = -gn + beta * d;
      }
      g = gn;
    }
    ++it;
    if (record) tr.rows.push_back({it, J, step});
    if (it % sch.grow_every == 0) step *= sch.grow;
  }
  tr.iterations = it;
  tr.final_step = step;
  tr.best_value = J;
  tr.termination = it >= sch.max_iter ? Termination::iteration_cap : Termination::step_floor;
  res.x = x;
  return res;
}

MinimizeResult minimize_gradient_projection(const Eigen::MatrixXcd& p0, double gamma, double R,
                                            const ObjectiveHandle& f, int max_iter, bool record) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ArgumentError("gradient-projection step must lie in (0,1)");
  if (!(R > 0.0)) throw ArgumentError("ball radius must be positive");
  if (max_iter < 0) throw ArgumentError("max_iter must be >= 0");
  if (f.norm(p0) > R + 1e-12) throw ArgumentError("starting point lies outside the ball");
  MinimizeResult res;
  Eigen::MatrixXcd p = p0;
  double J = f.value(p);
  if (!std::isfinite(J)) throw ArgumentError("objective is not finite at the starting point");
  RunTrace& tr = res.trace;
  tr.accepted.push_back(J);
  double best = J;
  for (int n = 1; n <= max_iter; ++n) {
    p -= gamma * f.gradient(p);
    const double nrm = f.norm(p);
    if (nrm > R) p *= R / nrm;
    J = f.value(p);
    tr.accepted.push_back(J);
    best = std::min(best, J);
    if (record) tr.rows.push_back({n, J, gamma});
  }
  tr.iterations = max_iter;
  tr.final_step = gamma;
  tr.best_value = best;
  tr.termination = Termination::iteration_cap;
  res.x = p;
  return res;
}

}  // namespace cvx1d
