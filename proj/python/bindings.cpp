#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "convexify1d/errors.hpp"
#include "convexify1d/pipeline.hpp"

namespace py = pybind11;
using namespace cvx1d;

namespace {

PipelineConfig parse(const std::string& json) {
  return json.empty() ? PipelineConfig::defaults() : config_from_json(json);
}

ContrastMode parse_mode(const std::string& m) {
  if (m == "max") return ContrastMode::max;
  if (m == "min") return ContrastMode::min;
  throw ArgumentError("mode must be 'max' or 'min'");
}

py::dict to_dict(const ReconstructionResult& r) {
  py::dict d;
  d["x"] = r.x;
  d["c_comp"] = r.c_comp;
  d["re_beta"] = r.re_beta;
  d["c_hat_comp"] = r.c_hat_comp;
  d["c_hat_true"] = r.c_hat_true;
  d["x_loc"] = r.x_loc;
  d["eps_comp"] = r.eps_comp;
  d["x_est"] = r.x_est;
  d["x_tar"] = r.x_tar;
  d["r_of_x"] = r.location.r;
  d["J_initial"] = r.J_initial;
  d["J_final"] = r.J_final;
  d["iterations"] = r.trace.iterations;
  d["termination"] = to_string(r.trace.termination);
  d["accepted"] = r.trace.accepted;
  d["warnings"] = r.warnings;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "1D coefficient inverse problem solver (C++ core)";

  m.def("default_config", [] { return config_to_json(PipelineConfig::defaults()); },
        "Default configuration as a JSON string.");
  m.def("normalize_config", [](const std::string& json) { return config_to_json(parse(json)); },
        py::arg("config_json"), "Validate a JSON configuration and return it with defaults filled in.");

  m.def(
      "solve_field",
      [](double c_hat, double x_loc, double k, double width, int nq) {
        const MediumProfile medium = c_hat == 1.0 ? MediumProfile::homogeneous() : MediumProfile::step(c_hat, x_loc, width);
        const FieldSolution s = solve_lippmann_schwinger(medium, k, -1.0, nq);
        return py::make_tuple(s.x, s.u);
      },
      py::arg("c_hat"), py::arg("x_loc"), py::arg("k"), py::arg("width") = 0.1, py::arg("nq") = 401,
      "Total field u(x, k) on the quadrature nodes of [0, 1] for a step inclusion.");

  m.def(
      "boundary_data",
      [](double c_hat, double x_loc, const std::string& json, bool noisy) {
        const PipelineConfig cfg = parse(json);
        const MediumProfile medium =
            c_hat == 1.0 ? MediumProfile::homogeneous() : MediumProfile::step(c_hat, x_loc, cfg.target_width);
        ComplexSamples g = boundary_data(medium, cfg.data_grid(), cfg.x0, cfg.nq);
        if (noisy) g = add_noise(g, cfg.delta, cfg.seed);
        return py::make_tuple(g.grid.nodes(), g.values);
      },
      py::arg("c_hat"), py::arg("x_loc"), py::arg("config_json") = "", py::arg("noisy") = false,
      "Normalised boundary data g0(k) = u(0,k)/u0(0,k) on the configured data grid.");

  m.def(
      "basis",
      [](double k_lo, double k_hi, int n, const Eigen::VectorXd& k) { return build_basis(k_lo, k_hi, n).psi_matrix(k); },
      py::arg("k_lo"), py::arg("k_hi"), py::arg("n"), py::arg("k"),
      "Values of the orthonormal basis functions, one row per function.");

  m.def(
      "run_synthetic",
      [](double c_hat, double x_loc, const std::string& json, bool trace) {
        const PipelineConfig cfg = parse(json);
        ReconstructionResult r;
        {
          py::gil_scoped_release nogil;
          r = run_synthetic(cfg, c_hat, x_loc, trace);
        }
        return to_dict(r);
      },
      py::arg("c_hat"), py::arg("x_loc"), py::arg("config_json") = "", py::arg("trace") = false);

  m.def(
      "run_table1",
      [](const std::string& json, int threads) {
        const PipelineConfig cfg = parse(json);
        std::vector<Table1Row> rows;
        {
          py::gil_scoped_release nogil;
          rows = run_table1(cfg, threads);
        }
        return table1_csv(rows);
      },
      py::arg("config_json") = "", py::arg("threads") = 0, "Runs the target batch and returns it as CSV text.");

  m.def(
      "n_study",
      [](double c_hat, double x_loc, int max_n, const std::string& json) {
        const NStudyResult r = n_study(parse(json), c_hat, x_loc, max_n);
        py::dict d;
        d["eps"] = r.eps;
        d["x"] = r.x;
        d["c_true"] = r.c_true;
        d["c_appr"] = r.c_appr;
        return d;
      },
      py::arg("c_hat"), py::arg("x_loc"), py::arg("max_n") = 4, py::arg("config_json") = "");

  m.def(
      "estimate_contrast",
      [](double c, double lo, double hi) {
        const ContrastEstimate e = estimate_contrast(c, lo, hi);
        return py::make_tuple(e.c_est_lo, e.c_est_hi);
      },
      py::arg("c_contrast"), py::arg("c_bg_lo"), py::arg("c_bg_hi"));

  m.def(
      "run_experimental",
      [](double k_lo, double k_hi, const Eigen::VectorXcd& values, double lo, double hi, const std::string& mode,
         const std::string& json) {
        if (values.size() < 2) throw ArgumentError("need at least two samples");
        ComplexSamples g0{FrequencyGrid(k_lo, k_hi, static_cast<int>(values.size()) - 1), values};
        const ExperimentalResult r = run_experimental(g0, lo, hi, parse_mode(mode), parse(json));
        py::dict d = to_dict(r.reconstruction);
        d["c_est"] = py::make_tuple(r.estimate.c_est_lo, r.estimate.c_est_hi);
        return d;
      },
      py::arg("k_lo"), py::arg("k_hi"), py::arg("values"), py::arg("c_bg_lo"), py::arg("c_bg_hi"),
      py::arg("mode") = "max", py::arg("config_json") = "");
}
