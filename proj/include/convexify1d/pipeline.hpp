#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "convexify1d/galerkin.hpp"
#include "convexify1d/optimizer.hpp"

namespace cvx1d {

enum class PipelineMode { synthetic, experimental };

struct PipelineConfig {
  double k_lo = 0.5;
  double k_hi = 1.5;
  int nk_data = 99;        // subintervals of the simulated data grid; a multiple of nk_inversion
  int nk_inversion = 3;    // subintervals used for the boundary projection
  int nx = 50;
  int n_basis = 3;
  double lambda = 3.0;
  double alpha = 0.05;
  double rho = 0.5;
  double delta = 0.05;
  std::uint64_t seed = 20240601;
  double x0 = -1.0;
  int nq = 401;
  int smoothing_window = 5;
  int averaging_window = 5;
  double qrm_gamma = 55.0;
  bool location_estimation = true;
  double target_width = 0.1;
  ScheduleParams schedule;
  PipelineMode mode = PipelineMode::synthetic;
  ContrastMode contrast_mode = ContrastMode::max;
  std::vector<std::pair<double, double>> targets;  // (c_hat, x_loc)

  static PipelineConfig defaults();
  void validate() const;
  FrequencyGrid data_grid() const { return {k_lo, k_hi, nk_data}; }
};

// Strict: unknown keys are rejected.
PipelineConfig config_from_json(const std::string& text, const PipelineConfig& base = PipelineConfig::defaults());
PipelineConfig load_config(const std::string& path);
std::string config_to_json(const PipelineConfig& config);

struct ReconstructionResult {
  std::optional<double> c_hat_true;
  std::optional<double> x_loc;
  Eigen::VectorXd x;        // nodes in the original coordinate
  Eigen::VectorXd c_comp;
  Eigen::VectorXd re_beta;  // before averaging and truncation
  double c_hat_comp = 1.0;
  std::optional<double> eps_comp;  // percent
  double x_est = 0.0;
  double x_tar = 0.0;
  LocationEstimate location;
  RunTrace trace;
  double J_initial = 0.0;
  double J_final = 0.0;
  std::vector<std::string> warnings;
};

// Inversion only: data -> q -> boundary vectors -> minimisation -> c_comp.
ReconstructionResult invert(const ComplexSamples& g0, const PipelineConfig& config,
                            bool record_trace = false);

ReconstructionResult run_synthetic(const PipelineConfig& config, double c_true, double x_loc,
                                   bool record_trace = false);

// Homogeneous medium (c = 1); same stages as run_synthetic.
ReconstructionResult run_homogeneous(const PipelineConfig& config);

struct Table1Row {
  double c_true = 0.0;
  double x_loc = 0.0;
  std::uint64_t seed = 0;
  std::optional<ReconstructionResult> result;
  std::string error;
};

std::vector<std::pair<double, double>> table1_targets();
std::vector<Table1Row> run_table1(const PipelineConfig& config, int threads = 0);
std::string table1_csv(const std::vector<Table1Row>& rows);

// y_n(x) = (v(x,.), psi_n) for the exact v = log(u/u0)/k^2 on an nq-node grid,
// with the k inner product evaluated by 64-point Gauss quadrature.
StateVector projected_truth(const MediumProfile& medium, const BasisSet& basis, double x0 = -1.0, int nq = 401);

struct NStudyResult {
  std::vector<double> eps;  // eps[N-1]
  Eigen::VectorXd x;
  Eigen::VectorXd c_true;
  std::vector<Eigen::VectorXd> c_appr;
};

NStudyResult n_study(const PipelineConfig& config, double c_true, double x_loc, int max_n = 4,
                     double k_eval = -1.0);

struct ContrastEstimate {
  double c_contrast = 1.0;
  double c_bg_lo = 1.0, c_bg_hi = 1.0;
  double c_est_lo = 1.0, c_est_hi = 1.0;
};

ContrastEstimate estimate_contrast(double c_contrast, double c_bg_lo, double c_bg_hi);

struct ExperimentalResult {
  ContrastEstimate estimate;
  ReconstructionResult reconstruction;
};

ExperimentalResult run_experimental(const ComplexSamples& g0, double c_bg_lo, double c_bg_hi,
                                    ContrastMode mode, const PipelineConfig& config);

}  // namespace cvx1d
