#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace cvx1d {

using cplx = std::complex<double>;

// Dielectric constant c(x). Equal to 1 outside (0,1).
class MediumProfile {
 public:
  enum class Kind { homogeneous, step, gridded };

  static MediumProfile homogeneous();
  static MediumProfile step(double c_hat, double x_loc, double d = 0.1);
  // Linear interpolation between samples on a uniform grid over [0,1].
  static MediumProfile gridded(std::vector<double> samples);

  // At a step edge the midpoint value (c_hat+1)/2 is returned.
  double operator()(double x) const;

  Kind kind() const { return kind_; }
  double c_hat() const { return c_hat_; }
  double x_loc() const { return x_loc_; }
  double width() const { return d_; }

 private:
  Kind kind_ = Kind::homogeneous;
  double c_hat_ = 1.0, x_loc_ = 0.0, d_ = 0.0;
  std::vector<double> samples_;
};

struct FrequencyGrid {
  double k_lo = 0.5;
  double k_hi = 1.5;
  int Nk = 100;

  FrequencyGrid() = default;
  FrequencyGrid(double lo, double hi, int nk);

  int size() const { return Nk + 1; }
  double step() const { return (k_hi - k_lo) / Nk; }
  double node(int m) const { return m == Nk ? k_hi : k_lo + m * step(); }
  Eigen::VectorXd nodes() const;
  // Composite trapezoid weights on the nodes.
  Eigen::VectorXd weights() const;
  bool operator==(const FrequencyGrid& o) const {
    return k_lo == o.k_lo && k_hi == o.k_hi && Nk == o.Nk;
  }
};

struct ComplexSamples {
  FrequencyGrid grid;
  Eigen::VectorXcd values;

  ComplexSamples() = default;
  ComplexSamples(FrequencyGrid g, Eigen::VectorXcd v);
  int size() const { return static_cast<int>(values.size()); }
};

cplx incident_field(double x, double x0, double k);

struct FieldSolution {
  Eigen::VectorXd x;   // quadrature nodes on [0,1]
  Eigen::VectorXcd u;  // total field at the nodes
  cplx u0_at_zero() const { return u(0); }
};

FieldSolution solve_lippmann_schwinger(const MediumProfile& medium, double k, double x0 = -1.0,
                                       int Nq = 401);

ComplexSamples boundary_data(const MediumProfile& medium, const FrequencyGrid& grid,
                             double x0 = -1.0, int Nq = 401);

ComplexSamples derivative_data(const ComplexSamples& g0);

ComplexSamples add_noise(const ComplexSamples& g0, double delta, std::uint64_t seed);

// Centered moving average; near the ends only the available neighbours are used.
ComplexSamples smooth(const ComplexSamples& samples, int window);
Eigen::VectorXd moving_average(const Eigen::VectorXd& a, int window);
Eigen::VectorXcd moving_average(const Eigen::VectorXcd& a, int window);

// CSV with header k,re,im.
ComplexSamples read_samples_csv(const std::string& path);
void write_samples_csv(const std::string& path, const ComplexSamples& s);

}  // namespace cvx1d
