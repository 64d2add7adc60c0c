#include "convexify1d/galerkin.hpp"

#include <algorithm>
#include <cmath>

#include "convexify1d/errors.hpp"
#include "convexify1d/quadrature.hpp"

namespace cvx1d {

namespace {
const cplx I(0.0, 1.0);
}

ChiValue chi(double x) {
  if (x <= 0.5) return {1.0, 0.0, 0.0};
  if (x >= 0.75) return {0.0, 0.0, 0.0};
  const double t = (x - 0.5) / 0.25;
  const double s = 1.0 - t;
  return {1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t), -4.0 * 30.0 * t * t * s * s,
          -16.0 * 60.0 * t * s * (1.0 - 2.0 * t)};
}

BoundaryVectors project_boundary(const LogData& q, const BasisSet& basis) {
  if (q.grid.k_lo != basis.k_lo() || q.grid.k_hi != basis.k_hi())
    throw ArgumentError("data grid and basis cover different wave-number intervals");
  const Eigen::MatrixXd P = basis.psi_matrix(q.grid.nodes());
  const Eigen::VectorXd w = q.grid.weights();
  const Eigen::MatrixXcd PW = (P * w.asDiagonal()).cast<cplx>();
  return {PW * q.q0, PW * q.q1};
}

namespace {
StateVector apply_quadratic(const std::vector<Eigen::MatrixXcd>& Q, const Eigen::MatrixXcd& L,
                            const StateVector& z) {
  StateVector out(z.rows(), z.cols());
  for (Eigen::Index s = 0; s < z.rows(); ++s)
    out.row(s) = (Q[s] * z).cwiseProduct(z).colwise().sum() + L.row(s) * z;
  return out;
}
}  // namespace

StateVector GalerkinSystem::F(const StateVector& z) const { return apply_quadratic(Q, L, z); }
StateVector GalerkinSystem::F_tilde(const StateVector& z) const { return apply_quadratic(Q_tilde, L_tilde, z); }

Eigen::MatrixXcd GalerkinSystem::jacobian(const Eigen::VectorXcd& z) const {
  Eigen::MatrixXcd A(N, N);
  for (int s = 0; s < N; ++s) A.row(s) = ((Q[s] + Q[s].transpose()) * z).transpose() + L.row(s);
  return A;
}

GalerkinSystem GalerkinSystem::zero(int N) {
  GalerkinSystem g;
  g.N = N;
  g.Q.assign(N, Eigen::MatrixXcd::Zero(N, N));
  g.Q_tilde = g.Q;
  g.L = g.L_tilde = Eigen::MatrixXcd::Zero(N, N);
  g.M = Eigen::MatrixXd::Identity(N, N);
  return g;
}

GalerkinSystem build_system(const BasisSet& basis, const ProjectionMatrix& projection) {
  const int N = basis.size();
  const QuadratureRule q = gauss64(basis.k_lo(), basis.k_hi());
  const Eigen::MatrixXd P = basis.psi_matrix(q.nodes);
  const Eigen::MatrixXd dP = basis.dpsi_matrix(q.nodes);
  const Eigen::ArrayXd k = q.nodes.array(), w = q.weights.array();

  // k-derivative of v'' + k^2 v'^2 - 2ik v' = -beta with v = sum y_n psi_n,
  // tested against psi_s. The quadratic kernel is symmetrised in (n,m).
  GalerkinSystem g;
  g.N = N;
  g.M = projection.M;
  g.Q_tilde.assign(N, Eigen::MatrixXcd::Zero(N, N));
  g.L_tilde = Eigen::MatrixXcd::Zero(N, N);
  for (int s = 0; s < N; ++s) {
    const Eigen::ArrayXd ws = w * P.row(s).transpose().array();
    for (int n = 0; n < N; ++n) {
      const Eigen::ArrayXd pn = P.row(n).transpose().array(), dpn = dP.row(n).transpose().array();
      for (int m = 0; m < N; ++m) {
        const Eigen::ArrayXd pm = P.row(m).transpose().array(), dpm = dP.row(m).transpose().array();
        const double v = (ws * (k * k * (dpn * pm + pn * dpm) + 2.0 * k * pn * pm)).sum();
        g.Q_tilde[s](n, m) = v;
      }
      g.L_tilde(s, n) = -2.0 * I * (ws * (k * dpn + pn)).sum();
    }
  }
  const Eigen::MatrixXcd Minv = projection.Minv.cast<cplx>();
  g.Q.assign(N, Eigen::MatrixXcd::Zero(N, N));
  for (int t = 0; t < N; ++t)
    for (int s = 0; s < N; ++s) g.Q[t] += Minv(t, s) * g.Q_tilde[s];
  g.L = Minv * g.L_tilde;
  return g;
}

SeedFunction make_seed(const BoundaryVectors& bv, int Nx) {
  const int N = static_cast<int>(bv.f0.size());
  SeedFunction f{StateVector(N, Nx + 1), StateVector(N, Nx + 1), StateVector(N, Nx + 1)};
  for (int j = 0; j <= Nx; ++j) {
    const double x = static_cast<double>(j) / Nx;
    const ChiValue c = chi(x);
    const Eigen::VectorXcd lin = bv.f0 + x * bv.f1;
    f.f.col(j) = lin * c.value;
    f.df.col(j) = bv.f1 * c.value + lin * c.d1;
    f.d2f.col(j) = 2.0 * bv.f1 * c.d1 + lin * c.d2;
  }
  return f;
}

StateVector residual(const StateVector& y, const GalerkinSystem& system) {
  return diff2(y) + system.F(diff1(y));
}

Eigen::VectorXcd expand_v(const StateVector& y, const BasisSet& basis, double k) {
  Eigen::VectorXcd psi(basis.size());
  for (int n = 0; n < basis.size(); ++n) psi(n) = basis.psi(n, k);
  return (psi.transpose() * y).transpose();
}

RecoveredCoefficient recover_c(const StateVector& y, const BasisSet& basis, double k) {
  if (!(k >= basis.k_lo() && k <= basis.k_hi())) throw DomainError("k_eval outside the basis interval");
  const StateVector v = expand_v(y, basis, k).transpose();
  const Eigen::RowVectorXcd v1 = diff1(v), v2 = diff2(v);
  RecoveredCoefficient r;
  r.beta = -(v2.array() + k * k * v1.array().square() - 2.0 * I * k * v1.array()).transpose();
  r.c = 1.0 + r.beta.real().array();
  return r;
}

Eigen::VectorXd postprocess_c(const Eigen::VectorXd& re_beta, double rho, ContrastMode mode, int avg_window) {
  if (!(rho > 0.0 && rho < 1.0)) throw ArgumentError("truncation factor rho must lie in (0,1)");
  Eigen::VectorXd b = moving_average(re_beta, avg_window);
  Eigen::VectorXd c = Eigen::VectorXd::Ones(b.size());
  if (mode == ContrastMode::max) {
    const double thr = rho * b.maxCoeff();
    if (b.maxCoeff() <= 0.0) return c;
    for (Eigen::Index j = 0; j < b.size(); ++j)
      if (b(j) >= thr) c(j) = b(j) + 1.0;
  } else {
    // Values below -1 would give a negative coefficient; they are reset first.
    for (Eigen::Index j = 0; j < b.size(); ++j)
      if (b(j) < -1.0) b(j) = 0.0;
    if (b.minCoeff() >= 0.0) return c;
    const double thr = rho * b.minCoeff();
    for (Eigen::Index j = 0; j < b.size(); ++j)
      if (b(j) <= thr) c(j) = b(j) + 1.0;
  }
  return c;
}

}  // namespace cvx1d
