#include "convexify1d/basis.hpp"

#include <cmath>

#include "convexify1d/errors.hpp"
#include "convexify1d/quadrature.hpp"

namespace cvx1d {

std::vector<long double> exp2_moments(int count) {
  // I_j = sum_m 2^m / (m! (j+m+1)); the upward recurrence I_j = (e^2 - j I_{j-1})/2
  // loses digits quickly, the series does not.
  std::vector<long double> I(count);
  for (int j = 0; j < count; ++j) {
    long double term = 1.0L, sum = 0.0L;  // term = 2^m/m!
    for (int m = 0; m < 200; ++m) {
      const long double t = term / static_cast<long double>(j + m + 1);
      sum += t;
      if (t < 1e-22L * sum) break;
      term *= 2.0L / static_cast<long double>(m + 1);
    }
    I[j] = sum;
  }
  return I;
}

BasisSet::BasisSet(double k_lo, double k_hi, std::vector<std::vector<long double>> coeffs)
    : k_lo_(k_lo), k_hi_(k_hi), coeffs_(std::move(coeffs)) {}

namespace {
long double horner(const std::vector<long double>& c, long double t) {
  long double s = 0.0L;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * t + *it;
  return s;
}
long double horner_deriv(const std::vector<long double>& c, long double t) {
  long double s = 0.0L;
  for (std::size_t i = c.size(); i-- > 1;) s = s * t + static_cast<long double>(i) * c[i];
  return s;
}
}  // namespace

double BasisSet::psi(int n, double k) const {
  const long double L = k_hi_ - k_lo_;
  const long double t = (k - k_lo_) / L;
  return static_cast<double>(horner(coeffs_[n], t) * std::exp(t) / std::sqrt(L));
}

double BasisSet::dpsi(int n, double k) const {
  const long double L = k_hi_ - k_lo_;
  const long double t = (k - k_lo_) / L;
  const auto& c = coeffs_[n];
  return static_cast<double>((horner(c, t) + horner_deriv(c, t)) * std::exp(t) / (L * std::sqrt(L)));
}

Eigen::MatrixXd BasisSet::psi_matrix(const Eigen::VectorXd& ks) const {
  Eigen::MatrixXd P(size(), ks.size());
  for (int n = 0; n < size(); ++n)
    for (Eigen::Index q = 0; q < ks.size(); ++q) P(n, q) = psi(n, ks(q));
  return P;
}

Eigen::MatrixXd BasisSet::dpsi_matrix(const Eigen::VectorXd& ks) const {
  Eigen::MatrixXd P(size(), ks.size());
  for (int n = 0; n < size(); ++n)
    for (Eigen::Index q = 0; q < ks.size(); ++q) P(n, q) = dpsi(n, ks(q));
  return P;
}

BasisSet build_basis(double k_lo, double k_hi, int N) {
  if (!(k_lo > 0.0 && k_lo < k_hi)) throw ArgumentError("basis needs 0 < k_lo < k_hi");
  if (N < 1 || N > 10) throw ArgumentError("basis size N must be in [1, 10]");

  // Classical Gram-Schmidt on t^n e^t in L2(0,1); for p e^t and q e^t the inner
  // product is sum p_i q_j I_{i+j}. Long double keeps N <= 7 orthonormal to 1e-10.
  const auto I = exp2_moments(2 * N);
  auto ip = [&](const std::vector<long double>& a, const std::vector<long double>& b) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * b[j] * I[i + j];
    return s;
  };
  std::vector<std::vector<long double>> P;
  for (int n = 0; n < N; ++n) {
    std::vector<long double> v(N, 0.0L);
    v[n] = 1.0L;
    std::vector<long double> w = v;
    for (const auto& p : P) {
      const long double c = ip(v, p);
      for (int i = 0; i < N; ++i) w[i] -= c * p[i];
    }
    const long double nrm = std::sqrt(ip(w, w));
    for (auto& x : w) x /= nrm;
    P.push_back(w);
  }
  for (auto& p : P) {
    // deg p_n = n; drop the structural zeros above it.
    std::size_t deg = p.size();
    while (deg > 1 && p[deg - 1] == 0.0L) --deg;
    p.resize(deg);
  }
  BasisSet basis(k_lo, k_hi, std::move(P));

  const QuadratureRule q = gauss64(k_lo, k_hi);
  const Eigen::MatrixXd Psi = basis.psi_matrix(q.nodes);
  const Eigen::MatrixXd G = Psi * q.weights.asDiagonal() * Psi.transpose();
  const double err = (G - Eigen::MatrixXd::Identity(N, N)).cwiseAbs().maxCoeff();
  if (!(err <= 1e-10))
    throw ConstructionError("Gram-Schmidt lost orthogonality (" + std::to_string(err) + ") at N=" +
                            std::to_string(N) + "; re-orthogonalize or lower N");
  return basis;
}

ProjectionMatrix build_projection_matrix(const BasisSet& basis) {
  const QuadratureRule q = gauss64(basis.k_lo(), basis.k_hi());
  const Eigen::MatrixXd P = basis.psi_matrix(q.nodes);
  const Eigen::MatrixXd dP = basis.dpsi_matrix(q.nodes);
  ProjectionMatrix pm;
  pm.M = P * q.weights.asDiagonal() * dP.transpose();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(pm.M);
  if (!(lu.rcond() > 1e-13)) throw ConstructionError("projection matrix is numerically singular");
  pm.Minv = lu.inverse();
  return pm;
}

}  // namespace cvx1d
