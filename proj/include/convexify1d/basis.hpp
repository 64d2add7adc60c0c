#pragma once

#include <vector>

#include <Eigen/Dense>

namespace cvx1d {

// psi_n(k) = L^{-1/2} p_n(t) e^t with t = (k - k_lo)/L, L = k_hi - k_lo,
// orthonormal in L2(k_lo, k_hi).
class BasisSet {
 public:
  BasisSet(double k_lo, double k_hi, std::vector<std::vector<long double>> coeffs);

  int size() const { return static_cast<int>(coeffs_.size()); }
  double k_lo() const { return k_lo_; }
  double k_hi() const { return k_hi_; }
  // Monomial coefficients of p_n, lowest degree first.
  const std::vector<long double>& coefficients(int n) const { return coeffs_[n]; }

  double psi(int n, double k) const;
  double dpsi(int n, double k) const;
  // Row n holds psi_n at each k.
  Eigen::MatrixXd psi_matrix(const Eigen::VectorXd& ks) const;
  Eigen::MatrixXd dpsi_matrix(const Eigen::VectorXd& ks) const;

 private:
  double k_lo_, k_hi_;
  std::vector<std::vector<long double>> coeffs_;
};

// Moments I_j = int_0^1 t^j e^{2t} dt for j < count.
std::vector<long double> exp2_moments(int count);

BasisSet build_basis(double k_lo, double k_hi, int N);

struct ProjectionMatrix {
  Eigen::MatrixXd M;     // M(m,n) = (psi_n', psi_m)
  Eigen::MatrixXd Minv;
};

ProjectionMatrix build_projection_matrix(const BasisSet& basis);

}  // namespace cvx1d
