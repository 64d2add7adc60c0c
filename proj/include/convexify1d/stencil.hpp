#pragma once

#include <Eigen/Dense>

namespace cvx1d {

using StateVector = Eigen::MatrixXcd;  // one row per basis component, one column per x node

// Second-order finite differences along rows on a uniform grid over [0,1].
// Interior nodes use central differences; the end nodes use one-sided
// second-order stencils.
StateVector diff1(const StateVector& y);
StateVector diff2(const StateVector& y);
// Adjoints (transposes) of diff1 / diff2.
StateVector diff1_adjoint(const StateVector& g);
StateVector diff2_adjoint(const StateVector& g);

// Dense versions of the same operators for n nodes.
Eigen::MatrixXd diff1_matrix(int n);
Eigen::MatrixXd diff2_matrix(int n);

inline double grid_step(Eigen::Index columns) { return 1.0 / static_cast<double>(columns - 1); }
Eigen::VectorXd uniform_nodes(int Nx);

}  // namespace cvx1d
