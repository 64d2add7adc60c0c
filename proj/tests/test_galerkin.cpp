#include <doctest.h>

#include <random>

#include "convexify1d/errors.hpp"
#include "convexify1d/galerkin.hpp"
#include "convexify1d/pipeline.hpp"
#include "convexify1d/quadrature.hpp"

using namespace cvx1d;
using doctest::Approx;

namespace {
const cplx I(0.0, 1.0);

Eigen::VectorXcd random_vec(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(d(rng), d(rng));
  return v;
}

struct Fixture {
  BasisSet basis = build_basis(0.5, 1.5, 3);
  ProjectionMatrix pm = build_projection_matrix(basis);
  GalerkinSystem sys = build_system(basis, pm);
};
}  // namespace

TEST_CASE("cut-off function") {
  CHECK(chi(0.25).value == 1.0);
  CHECK(chi(0.9).value == 0.0);
  CHECK(chi(0.625).value == Approx(0.5).epsilon(1e-15));
  for (double x : {0.5, 0.75}) {
    CHECK(chi(x).d1 == 0.0);
    CHECK(chi(x).d2 == 0.0);
    CHECK(std::abs(chi(x + 1e-9).d1) < 1e-12);
    CHECK(std::abs(chi(x - 1e-9).d2) < 1e-5);
  }
  const double h = 1e-5;
  for (double x : {0.55, 0.6, 0.66, 0.7, 0.74}) {
    CHECK((chi(x + h).value - chi(x - h).value) / (2 * h) == Approx(chi(x).d1).epsilon(1e-6));
    CHECK((chi(x + h).d1 - chi(x - h).d1) / (2 * h) == Approx(chi(x).d2).epsilon(1e-6));
    CHECK(chi(x + h).value <= chi(x).value);
  }
}

TEST_CASE("boundary projection") {
  const BasisSet basis = build_basis(0.5, 1.5, 3);
  LogData zero;
  zero.grid = FrequencyGrid(0.5, 1.5, 100);
  zero.q0 = zero.q1 = Eigen::VectorXcd::Zero(101);
  const BoundaryVectors z = project_boundary(zero, basis);
  CHECK(z.f0.cwiseAbs().maxCoeff() == 0.0);
  CHECK(z.f1.cwiseAbs().maxCoeff() == 0.0);

  // The exponential factor in the basis makes the trapezoid error constant large: the error
  // is about 3e-4 at Nk = 100 and falls as h^2, so 1e-6 is not reachable with these weights.
  double prev_err = 0.0;
  for (int nk : {100, 400}) {
    LogData q;
    q.grid = FrequencyGrid(0.5, 1.5, nk);
    q.q0 = basis.psi_matrix(q.grid.nodes()).row(0).transpose().cast<cplx>();
    q.q1 = Eigen::VectorXcd::Zero(nk + 1);
    const BoundaryVectors bv = project_boundary(q, basis);
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(3);
    e0(0) = 1.0;
    const double err = (bv.f0 - e0).cwiseAbs().maxCoeff();
    MESSAGE("Nk=" << nk << " projection error " << err);
    CHECK(err < (nk == 100 ? 4e-4 : 2.5e-5));
    if (prev_err > 0.0) CHECK(prev_err / err > 15.0);
    prev_err = err;
  }

  LogData other;
  other.grid = FrequencyGrid(0.6, 1.5, 10);
  other.q0 = other.q1 = Eigen::VectorXcd::Zero(11);
  CHECK_THROWS_AS(project_boundary(other, basis), ArgumentError);
}

TEST_CASE("boundary vectors for c=5, x=0.4 match an independent chain") {
  // Frozen from a numpy implementation: 99-interval data grid, every 33rd node.
  const Eigen::Vector3cd f0(cplx(-0.15902375167988764, -0.11446596795884492),
                            cplx(0.04637193843519675, 0.13661207402918257),
                            cplx(-0.04583502264900446, -0.08292452404269021));
  const Eigen::Vector3cd f1(cplx(0.22604430767852313, -0.3738690858973837),
                            cplx(-0.17322920726515914, -0.04784997523034479),
                            cplx(0.03761485421942557, -0.09429561205269137));
  const ComplexSamples g0 = boundary_data(MediumProfile::step(5.0, 0.4, 0.1), {0.5, 1.5, 99});
  const LogData q = compute_q(downsample(g0, 3), derivative_data(downsample(g0, 3)));
  const BoundaryVectors bv = project_boundary(q, build_basis(0.5, 1.5, 3));
  CHECK((bv.f0 - f0).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((bv.f1 - f1).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("algebraic structure of F") {
  Fixture fx;
  std::mt19937_64 rng(5);
  const int N = 3;
  const StateVector zero = StateVector::Zero(N, 1);
  CHECK(fx.sys.F(zero).cwiseAbs().maxCoeff() == 0.0);
  for (int s = 0; s < N; ++s) {
    CHECK((fx.sys.Q_tilde[s] - fx.sys.Q_tilde[s].transpose()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((fx.sys.Q[s] - fx.sys.Q[s].transpose()).cwiseAbs().maxCoeff() < 1e-10);
  }
  for (int t = 0; t < 10; ++t) {
    const StateVector z1 = random_vec(N, rng), z2 = random_vec(N, rng);
    const StateVector quad = fx.sys.F(z1) - fx.sys.L * z1;
    CHECK((fx.sys.F(2.0 * z1) - 2.0 * fx.sys.F(z1) - 2.0 * quad).cwiseAbs().maxCoeff() < 1e-10);
    // F(z1+z2) - F(z1) - F(z2) + F(0) is the symmetric bilinear form B(z1,z2).
    const StateVector b12 = fx.sys.F(z1 + z2) - fx.sys.F(z1) - fx.sys.F(z2);
    const StateVector b21 = fx.sys.F(z2 + z1) - fx.sys.F(z2) - fx.sys.F(z1);
    const StateVector b1_2z2 = fx.sys.F(z1 + 2.0 * z2) - fx.sys.F(z1) - fx.sys.F(2.0 * z2);
    const double scale = 1.0 + b12.cwiseAbs().maxCoeff();
    CHECK((b12 - b21).cwiseAbs().maxCoeff() / scale < 1e-12);
    CHECK((b1_2z2 - 2.0 * b12).cwiseAbs().maxCoeff() / scale < 1e-12);
    // Jacobian agrees with the bilinear form.
    CHECK((fx.sys.jacobian(z1) * z2 - (b12 + fx.sys.L * z2)).cwiseAbs().maxCoeff() / scale < 1e-12);
  }
  CHECK((fx.pm.Minv.cast<cplx>() * fx.sys.L_tilde - fx.sys.L).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("manufactured solution satisfies the projected k-differentiated equation") {
  // v(x,k) = sum y_n(x) psi_n(k) with polynomial y_n; the scalar equation is
  // d/dk [v'' + k^2 v'^2 - 2ik v'] evaluated pointwise in k and projected on psi_s.
  Fixture fx;
  const QuadratureRule q = gauss64(0.5, 1.5);
  const Eigen::MatrixXd P = fx.basis.psi_matrix(q.nodes), dP = fx.basis.dpsi_matrix(q.nodes);
  const cplx a[3][3] = {{{0.3, -0.1}, {1.2, 0.4}, {-0.5, 0.2}},
                        {{-0.7, 0.5}, {0.1, -0.9}, {0.6, 0.3}},
                        {{0.2, 0.2}, {-0.4, 0.1}, {0.9, -0.6}}};
  for (double x : {0.0, 0.3, 0.77}) {
    // y_n = a0 + a1 x + a2 x^3.
    Eigen::VectorXcd y1(3), y2(3);
    for (int n = 0; n < 3; ++n) {
      y1(n) = a[n][1] + 3.0 * a[n][2] * x * x;
      y2(n) = 6.0 * a[n][2] * x;
    }
    Eigen::VectorXcd lhs = Eigen::VectorXcd::Zero(3);
    for (Eigen::Index i = 0; i < q.nodes.size(); ++i) {
      const double k = q.nodes(i);
      cplx v1 = 0.0, dv1 = 0.0, dv2 = 0.0;
      for (int n = 0; n < 3; ++n) {
        v1 += y1(n) * P(n, i);
        dv1 += y1(n) * dP(n, i);
        dv2 += y2(n) * dP(n, i);
      }
      const cplx expr = dv2 + 2.0 * k * v1 * v1 + 2.0 * k * k * v1 * dv1 - 2.0 * I * v1 - 2.0 * I * k * dv1;
      for (int s = 0; s < 3; ++s) lhs(s) += q.weights(i) * expr * P(s, i);
    }
    const Eigen::VectorXcd rhs = fx.pm.M.cast<cplx>() * y2 + fx.sys.F_tilde(y1);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-8);
    const Eigen::VectorXcd projected = y2 + fx.sys.F(y1);
    CHECK((fx.pm.Minv.cast<cplx>() * lhs - projected).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("residual on simple states") {
  const int Nx = 20;
  const GalerkinSystem zero = GalerkinSystem::zero(3);
  CHECK(residual(StateVector::Zero(3, Nx + 1), zero).cwiseAbs().maxCoeff() == 0.0);

  Fixture fx;
  GalerkinSystem quad_only = fx.sys;
  quad_only.L.setZero();
  const Eigen::Vector3cd a(cplx(0.2, 0.1), cplx(-0.3, 0.4), cplx(0.5, -0.2));
  const Eigen::Vector3cd b(cplx(1.0, -0.5), cplx(0.25, 0.75), cplx(-0.6, 0.1));
  StateVector y(3, Nx + 1);
  for (int j = 0; j <= Nx; ++j) y.col(j) = a + b * (static_cast<double>(j) / Nx);
  const StateVector r = residual(y, quad_only);
  const StateVector expected = quad_only.F(StateVector(b));
  for (int j = 0; j <= Nx; ++j) CHECK((r.col(j) - expected).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("projected truth: Galerkin residual shrinks with N") {
  const auto medium = MediumProfile::step(5.0, 0.4, 0.1);
  std::vector<double> pre, post;
  for (int N = 1; N <= 4; ++N) {
    const BasisSet b = build_basis(0.5, 1.5, N);
    const ProjectionMatrix pm = build_projection_matrix(b);
    const GalerkinSystem sys = build_system(b, pm);
    const StateVector Y = projected_truth(medium, b);
    const Eigen::VectorXd w = trapezoid_weights(static_cast<int>(Y.cols()), grid_step(Y.cols()));
    // Projected form M y'' + F~(y') (before applying M^{-1}).
    const StateVector r = pm.M.cast<cplx>() * diff2(Y) + sys.F_tilde(diff1(Y));
    pre.push_back(std::sqrt(r.cwiseAbs2().colwise().sum().dot(w)));
    const StateVector rr = residual(Y, sys);
    post.push_back(std::sqrt(rr.cwiseAbs2().colwise().sum().dot(w)));
  }
  MESSAGE("M y'' + F~(y') norms: " << pre[0] << " " << pre[1] << " " << pre[2] << " " << pre[3]);
  MESSAGE("y'' + F(y') norms:    " << post[0] << " " << post[1] << " " << post[2] << " " << post[3]);
  for (int i = 1; i < 4; ++i) CHECK(pre[i] < pre[i - 1]);
}

TEST_CASE("recover_c") {
  const BasisSet b = build_basis(0.5, 1.5, 3);
  const RecoveredCoefficient r = recover_c(StateVector::Zero(3, 51), b, 0.5);
  CHECK(r.beta.cwiseAbs().maxCoeff() == 0.0);
  CHECK((r.c.array() - 1.0).abs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(recover_c(StateVector::Zero(3, 51), b, 2.0), DomainError);
}

TEST_CASE("k_eval stability of the projected truth at N=4") {
  PipelineConfig cfg;
  const NStudyResult lo = n_study(cfg, 5.0, 0.4, 4, 0.5);
  const NStudyResult hi = n_study(cfg, 5.0, 0.4, 4, 1.5);
  const Eigen::VectorXd w = trapezoid_weights(static_cast<int>(lo.x.size()), grid_step(lo.x.size()));
  const double diff = std::sqrt(w.dot((lo.c_appr[3] - hi.c_appr[3]).cwiseAbs2()));
  MESSAGE("eps4(k_lo)=" << lo.eps[3] << " eps4(k_hi)=" << hi.eps[3] << " diff=" << diff);
  CHECK(diff <= 2.0 * std::max(lo.eps[3], hi.eps[3]));
}

TEST_CASE("post-processing") {
  CHECK((postprocess_c(Eigen::VectorXd::Zero(10), 0.5, ContrastMode::max, 5).array() == 1.0).all());
  Eigen::VectorXd b(4);
  b << 0.0, 4.0, 1.0, 0.0;
  const Eigen::VectorXd c = postprocess_c(b, 0.5, ContrastMode::max, 1);
  CHECK(c(0) == 1.0);
  CHECK(c(1) == 5.0);
  CHECK(c(2) == 1.0);
  CHECK(c(3) == 1.0);

  Eigen::VectorXd m(5);
  m << 0.0, -0.4, -0.1, -1.5, -0.3;
  // -1.5 is reset before truncation; the threshold is then 0.5 * -0.4.
  const Eigen::VectorXd cm = postprocess_c(m, 0.5, ContrastMode::min, 1);
  CHECK(cm(0) == 1.0);
  CHECK(cm(1) == Approx(0.6));
  CHECK(cm(2) == 1.0);
  CHECK(cm(3) == 1.0);
  CHECK(cm(4) == Approx(0.7));

  CHECK_THROWS_AS(postprocess_c(b, 0.0, ContrastMode::max, 1), ArgumentError);
  CHECK_THROWS_AS(postprocess_c(b, 1.0, ContrastMode::max, 1), ArgumentError);
}

TEST_CASE("seed function meets the boundary triple") {
  const BoundaryVectors bv{Eigen::Vector3cd(cplx(0.1, -0.2), cplx(0.3, 0.0), cplx(-0.5, 0.4)),
                           Eigen::Vector3cd(cplx(1.0, 0.5), cplx(-0.2, 0.1), cplx(0.0, -0.7))};
  const SeedFunction f = make_seed(bv, 50);
  CHECK((f.f.col(0) - bv.f0).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((f.df.col(0) - bv.f1).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(f.df.col(50).cwiseAbs().maxCoeff() < 1e-15);
  // The discrete one-sided stencils see the same triple because f is linear near 0 and zero near 1.
  const StateVector d = diff1(f.f);
  CHECK((d.col(0) - bv.f1).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(d.col(50).cwiseAbs().maxCoeff() < 1e-10);
}
