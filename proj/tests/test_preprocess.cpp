#include <doctest.h>

#include <cmath>
#include <numbers>

#include "convexify1d/errors.hpp"
#include "convexify1d/preprocess.hpp"
#include "convexify1d/stencil.hpp"

using namespace cvx1d;
using doctest::Approx;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("unwrapped log of trivial and analytic phases") {
  const FrequencyGrid grid(0.5, 1.5, 100);
  const ComplexSamples one(grid, Eigen::VectorXcd::Ones(101));
  CHECK(complex_log_unwrapped(one).log.values.cwiseAbs().maxCoeff() == 0.0);

  // Phase pi*k crosses the branch cut at k = 1.
  Eigen::VectorXcd v(101);
  for (int m = 0; m <= 100; ++m) v(m) = std::exp(I * std::numbers::pi * grid.node(m));
  const UnwrappedLog lg = complex_log_unwrapped({grid, v});
  for (int m = 0; m <= 100; ++m) {
    CHECK(std::abs(lg.log.values(m).real()) < 1e-14);
    CHECK(lg.log.values(m).imag() == Approx(std::numbers::pi * grid.node(m)).epsilon(1e-13));
  }
  CHECK(lg.warnings.empty());
}

TEST_CASE("exp(log g) = g for simulated data; zero samples rejected") {
  const FrequencyGrid grid(0.5, 1.5, 99);
  for (auto [c, x] : {std::pair{5.0, 0.4}, std::pair{6.0, 0.1}}) {
    const ComplexSamples g0 = smooth(add_noise(boundary_data(MediumProfile::step(c, x, 0.1), grid), 0.05, 3), 5);
    const UnwrappedLog lg = complex_log_unwrapped(g0);
    CHECK((lg.log.values.array().exp() - g0.values.array()).abs().maxCoeff() < 1e-12);
    double jump = 0.0;
    for (int m = 1; m < g0.size(); ++m)
      jump = std::max(jump, std::abs(lg.log.values(m).imag() - lg.log.values(m - 1).imag()));
    CHECK(jump < std::numbers::pi);
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(4);
  v(2) = 0.0;
  try {
    complex_log_unwrapped({FrequencyGrid(0.5, 1.5, 3), v});
    FAIL("expected a data error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("sample 2") != std::string::npos);
  }
}

TEST_CASE("coarse grid produces a phase warning") {
  const FrequencyGrid grid(0.5, 1.5, 2);
  Eigen::VectorXcd v(3);
  for (int m = 0; m < 3; ++m) v(m) = std::exp(I * (2.5 * m));
  CHECK(!complex_log_unwrapped({grid, v}).warnings.empty());
}

TEST_CASE("q0 and q1") {
  const FrequencyGrid grid(0.5, 1.5, 10);
  const ComplexSamples one(grid, Eigen::VectorXcd::Ones(11));
  const LogData z = compute_q(one, derivative_data(one));
  CHECK(z.q0.cwiseAbs().maxCoeff() == 0.0);
  CHECK(z.q1.cwiseAbs().maxCoeff() == 0.0);

  const ComplexSamples g0 = boundary_data(MediumProfile::step(5.0, 0.4, 0.1), grid);
  const LogData q = compute_q(g0, derivative_data(g0));
  for (int m = 0; m < g0.size(); ++m) {
    const double k = grid.node(m);
    const cplx g = g0.values(m);
    CHECK(std::abs(q.q1(m) - 2.0 * I * (g - 1.0) / (g * k)) < 1e-14);
  }
}

TEST_CASE("q curves for c=5, x=0.4 match an independent chain") {
  // Frozen from a separate numpy implementation of the forward solve and log.
  const FrequencyGrid grid(0.5, 1.5, 99);
  const ComplexSamples g0 = boundary_data(MediumProfile::step(5.0, 0.4, 0.1), grid);
  const LogData q = compute_q(g0, derivative_data(g0));
  CHECK(std::abs(q.q0(0) - cplx(-0.17824359511050533, -0.36505963291062127)) < 1e-9);
  CHECK(std::abs(q.q0(99) - cplx(-0.14665292743501895, -0.014537023673422309)) < 1e-9);
  CHECK(std::abs(q.q1(0) - cplx(0.3811652534992719, -0.16486900553921874)) < 1e-9);
  CHECK(std::abs(q.q1(99) - cplx(0.0606489192307518, -0.5202415562797568)) < 1e-9);
}

TEST_CASE("QRM location estimate") {
  const LocationEstimate z = estimate_location(0.0, 0.0, 55.0, 50);
  CHECK(z.r.cwiseAbs().maxCoeff() == 0.0);
  CHECK(z.x_est == 0.0);
  CHECK(z.x_tar == 0.0);
  CHECK_THROWS_AS(estimate_location(1.0, 1.0, 0.0, 50), ArgumentError);

  const FrequencyGrid grid(0.5, 1.5, 99);
  const ComplexSamples g0 = boundary_data(MediumProfile::step(5.0, 0.4, 0.1), grid);
  const LogData q = compute_q(g0, derivative_data(g0));
  const LocationEstimate est = estimate_location(q.q0(99), q.q1(99), 55.0, 50);
  CHECK(std::abs(est.x_est - 0.4) <= 0.05);
  CHECK(est.x_tar == Approx(est.x_est - 0.1));

  // Constraints hold and the minimiser is stationary.
  const double h = 1.0 / 50;
  CHECK(std::abs(est.r(0) - q.q0(99)) < 1e-12);
  CHECK(std::abs((-3.0 * est.r(0) + 4.0 * est.r(1) - est.r(2)) / (2 * h) - q.q1(99)) < 1e-9);
  CHECK(std::abs((3.0 * est.r(50) - 4.0 * est.r(49) + est.r(48)) / (2 * h)) < 1e-9);
  const double gamma = 55.0;
  const Eigen::MatrixXd D2 = diff2_matrix(51);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(51, h);
  w(0) = w(50) = h / 2;
  const Eigen::MatrixXd A = D2.transpose() * w.asDiagonal() * D2 + gamma * Eigen::MatrixXd(w.asDiagonal());
  const Eigen::VectorXcd grad = A.cast<cplx>() * est.r;
  // Perturbations that keep the constraints: free node e_j plus its induced dependents.
  double worst = 0.0;
  for (int j : {1, 3, 10, 25, 49}) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(51);
    d(j) = 1.0;
    if (j == 1) d(2) = 4.0;
    d(50) = (4.0 * d(49) - d(48)) / 3.0;
    worst = std::max(worst, std::abs(d.cast<cplx>().dot(grad)) / (A.norm() * est.r.norm()));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("data propagation") {
  const FrequencyGrid grid(0.5, 1.5, 20);
  const ComplexSamples g0 = boundary_data(MediumProfile::step(5.0, 0.4, 0.1), grid);
  CHECK((propagate_data(g0, 0.0).values - g0.values).cwiseAbs().maxCoeff() < 1e-14);
  const ComplexSamples one(grid, Eigen::VectorXcd::Ones(21));
  CHECK((propagate_data(one, 0.27).values.array() - 1.0).abs().maxCoeff() < 1e-14);

  const ComplexSamples ab = propagate_data(propagate_data(g0, 0.1), 0.15);
  CHECK((ab.values - propagate_data(g0, 0.25).values).cwiseAbs().maxCoeff() < 1e-12);

  // Oracle: total field at x = 0.3 divided by the incident field there.
  const ComplexSamples gp = propagate_data(g0, 0.3);
  for (int m = 0; m <= 20; m += 4) {
    const double k = grid.node(m);
    const FieldSolution s = solve_lippmann_schwinger(MediumProfile::step(5.0, 0.4, 0.1), k, -1.0, 401);
    const cplx shifted = s.u(120) / incident_field(0.3, -1.0, k);
    CHECK(std::abs(gp.values(m) - shifted) / std::abs(shifted) < 1e-3);
  }
}

TEST_CASE("downsampling keeps end points") {
  const FrequencyGrid grid(0.5, 1.5, 99);
  const ComplexSamples g0 = boundary_data(MediumProfile::step(3.0, 0.2, 0.1), grid);
  const ComplexSamples d = downsample(g0, 3);
  CHECK(d.grid.Nk == 3);
  CHECK(d.values(0) == g0.values(0));
  CHECK(d.values(3) == g0.values(99));
  CHECK_THROWS_AS(downsample(g0, 4), ArgumentError);
}
