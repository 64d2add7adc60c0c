// Command-line driver: synthetic reconstructions, the 16-target batch, the
// basis-size study and contrast estimation from measured g0 files.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "convexify1d/errors.hpp"
#include "convexify1d/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cvx1d;

namespace {

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw DataError("cannot write " + p.string());
  out << s;
}

void write_xy(const fs::path& p, const char* header, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  std::string s = std::string(header) + "\n";
  char buf[96];
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x(i), y(i));
    s += buf;
  }
  write_text(p, s);
}

void write_r(const fs::path& p, const LocationEstimate& loc) {
  std::string s = "x,re,im\n";
  char buf[128];
  for (Eigen::Index i = 0; i < loc.x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", loc.x(i), loc.r(i).real(), loc.r(i).imag());
    s += buf;
  }
  write_text(p, s);
}

void write_trace(const fs::path& p, const RunTrace& t) {
  std::string s = "iter,J,step\n";
  char buf[96];
  for (const auto& r : t.rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", r.iter, r.J, r.step);
    s += buf;
  }
  write_text(p, s);
}

json summarize(const ReconstructionResult& r) {
  json j;
  j["c_hat_comp"] = r.c_hat_comp;
  if (r.c_hat_true) j["c_hat_true"] = *r.c_hat_true;
  if (r.eps_comp) j["eps_comp_percent"] = *r.eps_comp;
  if (r.x_loc) j["x_loc"] = *r.x_loc;
  j["x_est"] = r.x_est;
  j["x_tar"] = r.x_tar;
  j["iterations"] = r.trace.iterations;
  j["termination"] = to_string(r.trace.termination);
  j["final_step"] = r.trace.final_step;
  j["J_initial"] = r.J_initial;
  j["J_final"] = r.J_final;
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convexification reconstruction of a 1-D dielectric profile from backscattering data"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  std::uint64_t seed = 0;
  bool trace = false;
  app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "noise RNG seed");
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--trace", trace, "write the per-iteration trace as trace.csv");

  double c_true = 5.0, x_loc = 0.4;
  auto* synth = app.add_subcommand("synth", "reconstruct one simulated step target");
  synth->add_option("--c-true", c_true, "target dielectric constant")->required();
  synth->add_option("--x-loc", x_loc, "target centre")->required();

  auto* table1 = app.add_subcommand("table1", "reconstruct the 16 standard targets");
  int threads = 0;
  table1->add_option("--threads", threads, "worker threads (0 = hardware concurrency)");

  auto* nstudy = app.add_subcommand("nstudy", "approximation error of the truncated expansion for N = 1..4");
  nstudy->add_option("--c-true", c_true, "target dielectric constant");
  nstudy->add_option("--x-loc", x_loc, "target centre");

  auto* forward = app.add_subcommand("forward", "write simulated g0 samples (k,re,im) for a step target");
  forward->add_option("--c-true", c_true, "target dielectric constant")->required();
  forward->add_option("--x-loc", x_loc, "target centre")->required();
  bool forward_noise = false;
  forward->add_flag("--noisy", forward_noise, "apply the configured multiplicative noise");

  std::string data_path, mode = "max";
  double cbg_lo = 1.0, cbg_hi = 1.0;
  auto* exp = app.add_subcommand("exp", "estimate the dielectric constant of a target from g0 data");
  exp->add_option("--data", data_path, "CSV with header k,re,im")->required()->check(CLI::ExistingFile);
  exp->add_option("--cbg-lo", cbg_lo, "lower background dielectric constant")->required();
  exp->add_option("--cbg-hi", cbg_hi, "upper background dielectric constant")->required();
  exp->add_option("--mode", mode, "max or min contrast")->check(CLI::IsMember({"max", "min"}));

  CLI11_PARSE(app, argc, argv);

  try {
    PipelineConfig cfg = config_path.empty() ? PipelineConfig::defaults() : load_config(config_path);
    if (*seed_opt) cfg.seed = seed;
    cfg.validate();
    const fs::path out(out_dir);
    fs::create_directories(out);

    if (*synth) {
      const ReconstructionResult r = run_synthetic(cfg, c_true, x_loc, trace);
      write_xy(out / "c_comp.csv", "x,c", r.x, r.c_comp);
      if (cfg.location_estimation) write_r(out / "r_of_x.csv", r.location);
      if (trace) write_trace(out / "trace.csv", r.trace);
      json j = summarize(r);
      j["seed"] = cfg.seed;
      write_text(out / "summary.json", j.dump(2) + "\n");
      std::printf("c_hat_comp=%.4f eps=%.2f%% x_est=%.2f iterations=%d (%s)\n", r.c_hat_comp, *r.eps_comp, r.x_est,
                  r.trace.iterations, to_string(r.trace.termination).c_str());
    } else if (*table1) {
      const auto rows = run_table1(cfg, threads);
      const std::string csv = table1_csv(rows);
      write_text(out / "table1.csv", csv);
      std::cout << csv;
      json j;
      double worst = 0.0, sum = 0.0;
      int ok = 0;
      j["targets"] = json::array();
      for (const auto& r : rows) {
        json t = {{"c_true", r.c_true}, {"x_loc", r.x_loc}, {"seed", r.seed}};
        if (r.result) {
          t.update(summarize(*r.result));
          worst = std::max(worst, *r.result->eps_comp);
          sum += *r.result->eps_comp;
          ++ok;
        } else {
          t["error"] = r.error;
        }
        j["targets"].push_back(t);
      }
      j["completed"] = ok;
      j["max_eps_comp_percent"] = worst;
      j["mean_eps_comp_percent"] = ok ? sum / ok : 0.0;
      write_text(out / "summary.json", j.dump(2) + "\n");
      return ok == static_cast<int>(rows.size()) ? 0 : 1;
    } else if (*nstudy) {
      const NStudyResult r = n_study(cfg, c_true, x_loc);
      std::string csv = "N,eps\n";
      json j;
      for (std::size_t n = 0; n < r.eps.size(); ++n) {
        csv += std::to_string(n + 1) + "," + std::to_string(r.eps[n]) + "\n";
        j["eps"].push_back(r.eps[n]);
      }
      write_text(out / "nstudy.csv", csv);
      j["c_hat_true"] = c_true;
      j["x_loc"] = x_loc;
      write_text(out / "summary.json", j.dump(2) + "\n");
      std::cout << csv;
    } else if (*forward) {
      const MediumProfile m = MediumProfile::step(c_true, x_loc, cfg.target_width);
      ComplexSamples g = boundary_data(m, cfg.data_grid(), cfg.x0, cfg.nq);
      if (forward_noise) g = add_noise(g, cfg.delta, cfg.seed);
      write_samples_csv((out / "g0.csv").string(), g);
    } else if (*exp) {
      const ComplexSamples g = read_samples_csv(data_path);
      const auto cm = mode == "min" ? ContrastMode::min : ContrastMode::max;
      const ExperimentalResult r = run_experimental(g, cbg_lo, cbg_hi, cm, cfg);
      write_xy(out / "c_comp.csv", "x,c", r.reconstruction.x, r.reconstruction.c_comp);
      json j = summarize(r.reconstruction);
      j["c_contrast"] = r.estimate.c_contrast;
      j["c_bg"] = {r.estimate.c_bg_lo, r.estimate.c_bg_hi};
      j["c_est"] = {r.estimate.c_est_lo, r.estimate.c_est_hi};
      j["mode"] = mode;
      write_text(out / "summary.json", j.dump(2) + "\n");
      std::printf("c_contrast=%.4f c_est=[%.4f, %.4f]\n", r.estimate.c_contrast, r.estimate.c_est_lo,
                  r.estimate.c_est_hi);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
