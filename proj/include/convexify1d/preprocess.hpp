#pragma once

#include <string>
#include <vector>

#include "convexify1d/forward.hpp"

namespace cvx1d {

struct UnwrappedLog {
  ComplexSamples log;
  std::vector<std::string> warnings;
};

// Adjacent unwrapped phase steps above this are reported as an under-resolved grid.
inline constexpr double kPhaseWarnThreshold = 1.5707963267948966;

UnwrappedLog complex_log_unwrapped(const ComplexSamples& g);

struct LogData {
  FrequencyGrid grid;
  Eigen::VectorXcd q0, q1;
  std::vector<std::string> warnings;
};

LogData compute_q(const ComplexSamples& g0, const ComplexSamples& g1);

struct LocationEstimate {
  Eigen::VectorXd x;
  Eigen::VectorXcd r;
  double x_est = 0.0;
  double x_tar = 0.0;
};

// Propagation is applied only beyond this estimated depth, by this offset.
inline constexpr double kPropagationThreshold = 0.1;

LocationEstimate estimate_location(cplx q0_at_khi, cplx q1_at_khi, double gamma, int Nx);

ComplexSamples propagate_data(const ComplexSamples& g0, double x_tar, double x0 = -1.0);

// Keeps every stride-th node so the result spans the same interval with nk intervals.
ComplexSamples downsample(const ComplexSamples& s, int nk);

}  // namespace cvx1d
