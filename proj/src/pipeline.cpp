#include "convexify1d/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <thread>

#include "convexify1d/errors.hpp"
#include "convexify1d/quadrature.hpp"

namespace cvx1d {

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

LogData downsample_q(const LogData& q, int nk) {
  if (nk < 1 || q.grid.Nk % nk != 0)
    throw ArgumentError("cannot downsample " + std::to_string(q.grid.Nk) + " intervals to " + std::to_string(nk));
  const int stride = q.grid.Nk / nk;
  LogData out;
  out.grid = FrequencyGrid(q.grid.k_lo, q.grid.k_hi, nk);
  out.q0.resize(nk + 1);
  out.q1.resize(nk + 1);
  for (int m = 0; m <= nk; ++m) {
    out.q0(m) = q.q0(m * stride);
    out.q1(m) = q.q1(m * stride);
  }
  out.warnings = q.warnings;
  return out;
}

double contrast_peak(const Eigen::VectorXd& c, ContrastMode mode) {
  return mode == ContrastMode::max ? c.maxCoeff() : c.minCoeff();
}

}  // namespace

ReconstructionResult invert(const ComplexSamples& g0, const PipelineConfig& cfg, bool record_trace) {
  cfg.validate();
  ReconstructionResult res;
  const LogData q = stage("log", [&] { return compute_q(g0, derivative_data(g0)); });
  res.warnings = q.warnings;
  const LogData qi = stage("log", [&] { return downsample_q(q, cfg.nk_inversion); });

  const BasisSet basis = stage("basis", [&] { return build_basis(cfg.k_lo, cfg.k_hi, cfg.n_basis); });
  const GalerkinSystem system = stage("galerkin", [&] { return build_system(basis, build_projection_matrix(basis)); });
  const BoundaryVectors bv = stage("galerkin", [&] { return project_boundary(qi, basis); });

  const Objective obj(system, cfg.nx, {cfg.lambda, cfg.alpha, std::nullopt});
  const BoundaryConstraint bc(bv.f0, bv.f1, cfg.nx);
  const SeedFunction seed = make_seed(bv, cfg.nx);
  const Eigen::MatrixXcd z0 = bc.restrict(seed.f);
  res.J_initial = obj.value(bc.expand(z0));

  MinimizeResult mr =
      stage("optimizer", [&] { return minimize_cg(z0, make_handle(obj, bc), cfg.schedule, record_trace); });
  const StateVector Y = bc.expand(mr.x);
  res.J_final = mr.trace.best_value;
  res.trace = std::move(mr.trace);

  const RecoveredCoefficient rc = recover_c(Y, basis, cfg.k_lo);
  res.re_beta = rc.beta.real();
  res.c_comp = stage("postprocess",
                     [&] { return postprocess_c(res.re_beta, cfg.rho, cfg.contrast_mode, cfg.averaging_window); });
  res.c_hat_comp = contrast_peak(res.c_comp, cfg.contrast_mode);
  res.x = uniform_nodes(cfg.nx);
  return res;
}

namespace {

ReconstructionResult run_medium(const PipelineConfig& cfg, const MediumProfile& medium, bool record_trace) {
  cfg.validate();
  const ComplexSamples g0 = stage("forward", [&] { return boundary_data(medium, cfg.data_grid(), cfg.x0, cfg.nq); });
  ComplexSamples g = smooth(add_noise(g0, cfg.delta, cfg.seed), cfg.smoothing_window);

  LocationEstimate loc;
  if (cfg.location_estimation) {
    loc = stage("location", [&] {
      const LogData q = compute_q(g, derivative_data(g));
      const int last = q.grid.Nk;
      return estimate_location(q.q0(last), q.q1(last), cfg.qrm_gamma, cfg.nx);
    });
    if (loc.x_tar > 0.0) g = propagate_data(g, loc.x_tar, cfg.x0);
  }

  ReconstructionResult res = invert(g, cfg, record_trace);
  res.x.array() += loc.x_tar;
  res.x_est = loc.x_est;
  res.x_tar = loc.x_tar;
  res.location = std::move(loc);
  return res;
}

}  // namespace

ReconstructionResult run_synthetic(const PipelineConfig& cfg, double c_true, double x_loc, bool record_trace) {
  const MediumProfile medium = stage("medium", [&] { return MediumProfile::step(c_true, x_loc, cfg.target_width); });
  ReconstructionResult res = run_medium(cfg, medium, record_trace);
  res.c_hat_true = c_true;
  res.x_loc = x_loc;
  res.eps_comp = std::abs(res.c_hat_comp - c_true) / c_true * 100.0;
  return res;
}

ReconstructionResult run_homogeneous(const PipelineConfig& cfg) {
  return run_medium(cfg, MediumProfile::homogeneous(), false);
}

std::vector<std::pair<double, double>> table1_targets() {
  std::vector<std::pair<double, double>> t;
  for (double c : {3.0, 4.0, 5.0, 6.0})
    for (double x : {0.1, 0.2, 0.3, 0.4}) t.emplace_back(c, x);
  return t;
}

std::vector<Table1Row> run_table1(const PipelineConfig& cfg, int threads) {
  const auto targets = cfg.targets.empty() ? table1_targets() : cfg.targets;
  std::vector<Table1Row> rows(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    rows[i].c_true = targets[i].first;
    rows[i].x_loc = targets[i].second;
    rows[i].seed = cfg.seed + i;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < rows.size();) {
      PipelineConfig c = cfg;
      c.seed = rows[i].seed;
      try {
        rows[i].result = run_synthetic(c, rows[i].c_true, rows[i].x_loc);
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
    }
  };
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min<int>(threads, static_cast<int>(rows.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::ostringstream out;
  out << "c_true,x_loc,c_comp,eps_comp_percent,x_est,seed,error\n";
  char buf[256];
  for (const auto& r : rows) {
    if (r.result) {
      std::snprintf(buf, sizeof buf, "%.1f,%.1f,%.2f,%.2f,%.2f,%llu,\n", r.c_true, r.x_loc, r.result->c_hat_comp,
                    *r.result->eps_comp, r.result->x_est, static_cast<unsigned long long>(r.seed));
    } else {
      std::string e = r.error;
      std::replace(e.begin(), e.end(), ',', ';');
      std::replace(e.begin(), e.end(), '\n', ' ');
      std::snprintf(buf, sizeof buf, "%.1f,%.1f,,,,%llu,%s\n", r.c_true, r.x_loc,
                    static_cast<unsigned long long>(r.seed), e.c_str());
    }
    out << buf;
  }
  return out.str();
}

namespace {

// Rows: Gauss nodes in k; columns: x nodes.
Eigen::MatrixXcd exact_v(const MediumProfile& medium, const Eigen::VectorXd& ks, double x0, int nq) {
  Eigen::MatrixXcd V(ks.size(), nq);
  for (Eigen::Index i = 0; i < ks.size(); ++i) {
    const double k = ks(i);
    const FieldSolution s = solve_lippmann_schwinger(medium, k, x0, nq);
    // Phase continuous along x from x = 0.
    double phase = 0.0, prev = 0.0;
    for (int j = 0; j < nq; ++j) {
      const cplx w = s.u(j) / incident_field(s.x(j), x0, k);
      const double a = std::arg(w);
      if (j == 0) {
        phase = a;
      } else {
        double d = a - prev;
        d -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
        phase += d;
      }
      prev = a;
      V(i, j) = cplx(std::log(std::abs(w)), phase) / (k * k);
    }
  }
  return V;
}

}  // namespace

StateVector projected_truth(const MediumProfile& medium, const BasisSet& basis, double x0, int nq) {
  const QuadratureRule q = gauss64(basis.k_lo(), basis.k_hi());
  const Eigen::MatrixXd P = basis.psi_matrix(q.nodes);
  return (P * q.weights.asDiagonal()).cast<cplx>() * exact_v(medium, q.nodes, x0, nq);
}

NStudyResult n_study(const PipelineConfig& cfg, double c_true, double x_loc, int max_n, double k_eval) {
  if (max_n < 1) throw ArgumentError("n_study needs N >= 1");
  if (k_eval < 0.0) k_eval = cfg.k_lo;
  const MediumProfile medium = MediumProfile::step(c_true, x_loc, cfg.target_width);
  const QuadratureRule q = gauss64(cfg.k_lo, cfg.k_hi);
  const int nq = cfg.nq;
  const Eigen::MatrixXcd V = exact_v(medium, q.nodes, cfg.x0, nq);

  NStudyResult out;
  out.x = uniform_nodes(nq - 1);
  out.c_true.resize(nq);
  for (int j = 0; j < nq; ++j) out.c_true(j) = medium(out.x(j));
  const Eigen::VectorXd w = trapezoid_weights(nq, 1.0 / (nq - 1));
  for (int N = 1; N <= max_n; ++N) {
    const BasisSet basis = build_basis(cfg.k_lo, cfg.k_hi, N);
    const Eigen::MatrixXd P = basis.psi_matrix(q.nodes);
    const StateVector Y = (P * q.weights.asDiagonal()).cast<cplx>() * V;
    const RecoveredCoefficient rc = recover_c(Y, basis, k_eval);
    out.eps.push_back(std::sqrt(w.dot((rc.c - out.c_true).cwiseAbs2())));
    out.c_appr.push_back(rc.c);
  }
  return out;
}

ContrastEstimate estimate_contrast(double c_contrast, double lo, double hi) {
  if (!(lo > 0.0 && lo <= hi)) throw ArgumentError("background range must satisfy 0 < lo <= hi");
  return {c_contrast, lo, hi, lo * c_contrast, hi * c_contrast};
}

ExperimentalResult run_experimental(const ComplexSamples& g0, double lo, double hi, ContrastMode mode,
                                    const PipelineConfig& config) {
  PipelineConfig cfg = config;
  cfg.mode = PipelineMode::experimental;
  cfg.contrast_mode = mode;
  cfg.location_estimation = false;
  cfg.k_lo = g0.grid.k_lo;
  cfg.k_hi = g0.grid.k_hi;
  cfg.nk_data = g0.grid.Nk;
  ExperimentalResult out;
  out.reconstruction = invert(smooth(g0, cfg.smoothing_window), cfg);
  out.estimate = estimate_contrast(out.reconstruction.c_hat_comp, lo, hi);
  return out;
}

}  // namespace cvx1d
