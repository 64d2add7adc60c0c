#include "convexify1d/preprocess.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "convexify1d/errors.hpp"
#include "convexify1d/quadrature.hpp"
#include "convexify1d/stencil.hpp"

namespace cvx1d {

namespace {
const cplx I(0.0, 1.0);
}

UnwrappedLog complex_log_unwrapped(const ComplexSamples& g) {
  UnwrappedLog out;
  out.log = g;
  double prev_arg = 0.0, phase = 0.0;
  for (int m = 0; m < g.size(); ++m) {
    const cplx z = g.values(m);
    if (z == 0.0 || !std::isfinite(std::abs(z)))
      throw DataError("cannot take log of sample " + std::to_string(m) + " (k=" +
                      std::to_string(g.grid.node(m)) + ")");
    const double a = std::arg(z);
    if (m == 0) {
      phase = a;
    } else {
      double d = a - prev_arg;
      d -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
      if (std::abs(d) > kPhaseWarnThreshold) {
        std::ostringstream msg;
        msg << "phase step " << d << " between nodes " << m - 1 << " and " << m
            << " is large; the wave-number grid may be too coarse";
        out.warnings.push_back(msg.str());
      }
      phase += d;
    }
    prev_arg = a;
    out.log.values(m) = cplx(std::log(std::abs(z)), phase);
  }
  return out;
}

LogData compute_q(const ComplexSamples& g0, const ComplexSamples& g1) {
  if (!(g0.grid == g1.grid)) throw ArgumentError("g0 and g1 must share a grid");
  UnwrappedLog lg = complex_log_unwrapped(g0);
  LogData q;
  q.grid = g0.grid;
  q.q0.resize(g0.size());
  q.q1.resize(g0.size());
  for (int m = 0; m < g0.size(); ++m) {
    const double k = g0.grid.node(m);
    q.q0(m) = lg.log.values(m) / (k * k);
    q.q1(m) = g1.values(m) / (g0.values(m) * k * k);
  }
  q.warnings = std::move(lg.warnings);
  return q;
}

LocationEstimate estimate_location(cplx a, cplx b, double gamma, int Nx) {
  if (!(gamma > 0.0)) throw ArgumentError("QRM weight gamma must be positive");
  if (Nx < 4) throw ArgumentError("QRM needs Nx >= 4");
  const int n = Nx + 1;
  const double h = 1.0 / Nx;

  // r = T z + c with r(0) = a, r'(0) = b, r'(1) = 0 built in.
  const int nf = Nx - 2;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, nf);
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n);
  T(1, 0) = 1.0;
  for (int j = 3; j < Nx; ++j) T(j, j - 2) = 1.0;
  c(0) = a;
  T.row(2) = 4.0 * T.row(1);
  c(2) = -3.0 * a - 2.0 * h * b;
  T.row(Nx) = (4.0 * T.row(Nx - 1) - T.row(Nx - 2)) / 3.0;
  c(Nx) = (4.0 * c(Nx - 1) - c(Nx - 2)) / 3.0;

  const Eigen::MatrixXd D2 = diff2_matrix(n);
  const Eigen::VectorXd w = trapezoid_weights(n, h);
  const Eigen::MatrixXd A = D2.transpose() * w.asDiagonal() * D2 + gamma * Eigen::MatrixXd(w.asDiagonal());
  const Eigen::MatrixXd H = T.transpose() * A * T;
  const Eigen::VectorXcd rhs = -(T.transpose() * A.cast<cplx>() * c);
  Eigen::LLT<Eigen::MatrixXd> llt(H);
  if (llt.info() != Eigen::Success) throw SolverError("QRM normal system is singular; increase gamma");
  Eigen::VectorXcd z(nf);
  z.real() = llt.solve(rhs.real());
  z.imag() = llt.solve(rhs.imag());

  LocationEstimate est;
  est.x = uniform_nodes(Nx);
  est.r = T.cast<cplx>() * z + c;
  if (a == 0.0 && b == 0.0) return est;
  Eigen::Index j = 0;
  est.r.segment(1, Nx - 1).imag().minCoeff(&j);
  est.x_est = est.x(j + 1);
  est.x_tar = est.x_est > kPropagationThreshold ? est.x_est - kPropagationThreshold : 0.0;
  return est;
}

ComplexSamples propagate_data(const ComplexSamples& g0, double x_tar, double x0) {
  if (!(x_tar >= 0.0 && x_tar < 1.0)) throw DomainError("propagation distance must lie in [0,1)");
  ComplexSamples out = g0;
  for (int m = 0; m < g0.size(); ++m) {
    const double k = g0.grid.node(m);
    const cplx u0_0 = incident_field(0.0, x0, k);
    const cplx D1 = u0_0 * (g0.values(m) - 1.0);
    const cplx D2 = u0_0;
    const cplx u = D1 * std::exp(I * k * x_tar) + D2 * std::exp(-I * k * x_tar);
    out.values(m) = u / incident_field(x_tar, x0, k);
  }
  return out;
}

ComplexSamples downsample(const ComplexSamples& s, int nk) {
  if (nk < 1 || s.grid.Nk % nk != 0)
    throw ArgumentError("cannot downsample " + std::to_string(s.grid.Nk) + " intervals to " + std::to_string(nk));
  const int stride = s.grid.Nk / nk;
  FrequencyGrid g(s.grid.k_lo, s.grid.k_hi, nk);
  Eigen::VectorXcd v(nk + 1);
  for (int m = 0; m <= nk; ++m) v(m) = s.values(m * stride);
  return {g, v};
}

}  // namespace cvx1d
