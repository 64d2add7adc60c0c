#pragma once

#include <vector>

#include "convexify1d/basis.hpp"
#include "convexify1d/preprocess.hpp"
#include "convexify1d/stencil.hpp"

namespace cvx1d {

struct ChiValue {
  double value, d1, d2;
};

// 1 on [0,1/2], 0 on [3/4,1], quintic smoothstep in between.
ChiValue chi(double x);

struct BoundaryVectors {
  Eigen::VectorXcd f0, f1;
};

BoundaryVectors project_boundary(const LogData& q, const BasisSet& basis);

// F_s(z) = sum_{n,m} Q[s](n,m) z_n z_m + sum_n L(s,n) z_n.
struct GalerkinSystem {
  int N = 0;
  std::vector<Eigen::MatrixXcd> Q, Q_tilde;
  Eigen::MatrixXcd L, L_tilde;
  Eigen::MatrixXd M;

  // z holds one column per x node.
  StateVector F(const StateVector& z) const;
  StateVector F_tilde(const StateVector& z) const;
  // dF_s/dz_n at a single node.
  Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& z) const;

  static GalerkinSystem zero(int N);
};

GalerkinSystem build_system(const BasisSet& basis, const ProjectionMatrix& projection);

struct SeedFunction {
  StateVector f, df, d2f;
};

SeedFunction make_seed(const BoundaryVectors& bv, int Nx);

// y'' + F(y') at every node.
StateVector residual(const StateVector& y, const GalerkinSystem& system);

enum class ContrastMode { max, min };

struct RecoveredCoefficient {
  Eigen::VectorXcd beta;
  Eigen::VectorXd c;  // 1 + Re beta
};

RecoveredCoefficient recover_c(const StateVector& y, const BasisSet& basis, double k_eval);

// v(x, k) = sum_n y_n(x) psi_n(k).
Eigen::VectorXcd expand_v(const StateVector& y, const BasisSet& basis, double k);

Eigen::VectorXd postprocess_c(const Eigen::VectorXd& re_beta, double rho, ContrastMode mode,
                              int avg_window);

}  // namespace cvx1d
