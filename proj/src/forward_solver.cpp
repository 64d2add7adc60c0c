#include "convexify1d/forward.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "convexify1d/errors.hpp"
#include "convexify1d/quadrature.hpp"

namespace cvx1d {

namespace {
constexpr double kMinC = 0.1;
constexpr double kEdgeTol = 1e-12;
const cplx I(0.0, 1.0);
}  // namespace

MediumProfile MediumProfile::homogeneous() { return {}; }

MediumProfile MediumProfile::step(double c_hat, double x_loc, double d) {
  if (!(c_hat >= kMinC)) throw DomainError("step medium: c_hat must be >= 0.1");
  if (!(d > 0.0)) throw DomainError("step medium: width must be positive");
  if (!(x_loc - d / 2 > 0.0 && x_loc + d / 2 < 1.0))
    throw DomainError("step medium: target must lie inside (0,1)");
  MediumProfile m;
  m.kind_ = Kind::step;
  m.c_hat_ = c_hat;
  m.x_loc_ = x_loc;
  m.d_ = d;
  return m;
}

MediumProfile MediumProfile::gridded(std::vector<double> samples) {
  if (samples.size() < 2) throw DomainError("gridded medium needs at least two samples");
  for (double c : samples)
    if (!(c >= kMinC)) throw DomainError("gridded medium: c must be >= 0.1");
  MediumProfile m;
  m.kind_ = Kind::gridded;
  m.samples_ = std::move(samples);
  return m;
}

double MediumProfile::operator()(double x) const {
  if (x <= 0.0 || x >= 1.0) return 1.0;
  switch (kind_) {
    case Kind::homogeneous:
      return 1.0;
    case Kind::step: {
      const double a = x_loc_ - d_ / 2, b = x_loc_ + d_ / 2;
      if (std::abs(x - a) < kEdgeTol || std::abs(x - b) < kEdgeTol) return 0.5 * (c_hat_ + 1.0);
      return (x > a && x < b) ? c_hat_ : 1.0;
    }
    case Kind::gridded: {
      const double pos = x * static_cast<double>(samples_.size() - 1);
      const auto j = std::min(static_cast<std::size_t>(pos), samples_.size() - 2);
      const double t = pos - static_cast<double>(j);
      return (1.0 - t) * samples_[j] + t * samples_[j + 1];
    }
  }
  return 1.0;
}

FrequencyGrid::FrequencyGrid(double lo, double hi, int nk) : k_lo(lo), k_hi(hi), Nk(nk) {
  if (!(lo > 0.0 && lo < hi)) throw ArgumentError("frequency grid needs 0 < k_lo < k_hi");
  if (nk < 1) throw ArgumentError("frequency grid needs Nk >= 1");
}

Eigen::VectorXd FrequencyGrid::nodes() const {
  Eigen::VectorXd k(size());
  for (int m = 0; m < size(); ++m) k(m) = node(m);
  return k;
}

Eigen::VectorXd FrequencyGrid::weights() const { return trapezoid_weights(size(), step()); }

ComplexSamples::ComplexSamples(FrequencyGrid g, Eigen::VectorXcd v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size())
    throw ArgumentError("sample count " + std::to_string(values.size()) + " does not match grid size " +
                        std::to_string(grid.size()));
}

cplx incident_field(double x, double x0, double k) {
  if (!(k > 0.0)) throw DomainError("incident_field: wave number must be positive");
  return std::exp(-I * k * std::abs(x - x0)) / (2.0 * I * k);
}

FieldSolution solve_lippmann_schwinger(const MediumProfile& medium, double k, double x0, int Nq) {
  if (!(x0 < 0.0)) throw DomainError("source must lie at x0 < 0");
  if (!(k > 0.0)) throw DomainError("wave number must be positive");
  if (Nq < 2) throw ArgumentError("Nq must be >= 2");

  const double h = 1.0 / (Nq - 1);
  FieldSolution sol;
  sol.x.resize(Nq);
  sol.u.resize(Nq);
  const Eigen::VectorXd w = trapezoid_weights(Nq, h);

  // Only nodes with c != 1 carry a nonzero column of the kernel, so the dense
  // solve reduces to those nodes and the rest follow by one evaluation.
  std::vector<int> active;
  Eigen::VectorXd contrast(Nq);
  for (int j = 0; j < Nq; ++j) {
    sol.x(j) = (j == Nq - 1) ? 1.0 : j * h;
    contrast(j) = (medium(sol.x(j)) - 1.0) * w(j);
    sol.u(j) = incident_field(sol.x(j), x0, k);
    if (contrast(j) != 0.0) active.push_back(j);
  }
  if (active.empty()) return sol;

  const cplx pref = k / (2.0 * I);
  auto kernel = [&](int i, int j) {
    return pref * std::exp(-I * k * std::abs(sol.x(i) - sol.x(j))) * contrast(j);
  };
  const int na = static_cast<int>(active.size());
  Eigen::MatrixXcd A(na, na);
  Eigen::VectorXcd rhs(na);
  for (int a = 0; a < na; ++a) {
    rhs(a) = sol.u(active[a]);
    for (int b = 0; b < na; ++b) A(a, b) = (a == b ? 1.0 : 0.0) - kernel(active[a], active[b]);
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    std::ostringstream msg;
    msg << "Lippmann-Schwinger system singular at k=" << k << " (condition estimate " << 1.0 / rcond << ")";
    throw SolverError(msg.str());
  }
  const Eigen::VectorXcd us = lu.solve(rhs);
  for (int i = 0; i < Nq; ++i) {
    cplx acc = 0.0;
    for (int b = 0; b < na; ++b) acc += kernel(i, active[b]) * us(b);
    sol.u(i) += acc;
  }
  return sol;
}

ComplexSamples boundary_data(const MediumProfile& medium, const FrequencyGrid& grid, double x0, int Nq) {
  Eigen::VectorXcd g(grid.size());
  for (int m = 0; m < grid.size(); ++m) {
    const double k = grid.node(m);
    const FieldSolution s = solve_lippmann_schwinger(medium, k, x0, Nq);
    g(m) = s.u0_at_zero() / incident_field(0.0, x0, k);
  }
  return {grid, g};
}

ComplexSamples derivative_data(const ComplexSamples& g0) {
  Eigen::VectorXcd g1(g0.size());
  for (int m = 0; m < g0.size(); ++m) g1(m) = 2.0 * I * g0.grid.node(m) * (g0.values(m) - 1.0);
  return {g0.grid, g1};
}

ComplexSamples add_noise(const ComplexSamples& g0, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0)) throw ArgumentError("noise level must be >= 0");
  if (delta == 0.0) return g0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexSamples out = g0;
  for (int m = 0; m < g0.size(); ++m) {
    const double sr = u(rng);
    const double si = u(rng);
    out.values(m) *= 1.0 + delta * cplx(sr, si);
  }
  return out;
}

namespace {
template <class Vec>
Vec moving_average_impl(const Vec& a, int window) {
  if (window < 1 || window % 2 == 0) throw ArgumentError("averaging window must be odd and >= 1");
  if (window > a.size()) throw ArgumentError("averaging window exceeds sample count");
  const Eigen::Index half = window / 2, n = a.size();
  Vec out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index lo = std::max<Eigen::Index>(0, i - half);
    const Eigen::Index hi = std::min<Eigen::Index>(n - 1, i + half);
    out(i) = a.segment(lo, hi - lo + 1).mean();
  }
  return out;
}
}  // namespace

Eigen::VectorXd moving_average(const Eigen::VectorXd& a, int window) { return moving_average_impl(a, window); }
Eigen::VectorXcd moving_average(const Eigen::VectorXcd& a, int window) { return moving_average_impl(a, window); }

ComplexSamples smooth(const ComplexSamples& samples, int window) {
  return {samples.grid, moving_average(samples.values, window)};
}

}  // namespace cvx1d
