#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "convexify1d/errors.hpp"
#include "convexify1d/pipeline.hpp"

namespace cvx1d {

using nlohmann::json;

PipelineConfig PipelineConfig::defaults() { return {}; }

namespace {
void require_odd(int w, const char* name) {
  if (w < 1 || w % 2 == 0) throw ArgumentError(std::string(name) + " must be odd and >= 1");
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ArgumentError("unknown config key '" + where + it.key() + "'");
}
}  // namespace

void PipelineConfig::validate() const {
  FrequencyGrid(k_lo, k_hi, nk_data);
  if (nk_inversion < 1 || nk_data % nk_inversion != 0)
    throw ArgumentError("nk_inversion must divide nk_data");
  if (nx < 4) throw ArgumentError("nx must be >= 4");
  if (n_basis < 1 || n_basis > 10) throw ArgumentError("n_basis must be in [1,10]");
  ObjectiveParams{lambda, alpha, std::nullopt}.validate();
  if (!(rho > 0.0 && rho < 1.0)) throw ArgumentError("rho must lie in (0,1)");
  if (!(delta >= 0.0)) throw ArgumentError("delta must be >= 0");
  if (!(x0 < 0.0)) throw ArgumentError("x0 must be negative");
  if (nq < 2) throw ArgumentError("nq must be >= 2");
  require_odd(smoothing_window, "smoothing_window");
  require_odd(averaging_window, "averaging_window");
  if (smoothing_window > nk_data + 1) throw ArgumentError("smoothing_window exceeds the data grid");
  if (averaging_window > nx + 1) throw ArgumentError("averaging_window exceeds the spatial grid");
  if (!(qrm_gamma > 0.0)) throw ArgumentError("qrm_gamma must be positive");
  if (!(target_width > 0.0)) throw ArgumentError("target_width must be positive");
  schedule.validate();
}

PipelineConfig config_from_json(const std::string& text, const PipelineConfig& base) {
  PipelineConfig c = base;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ArgumentError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ArgumentError("config must be a JSON object");
  reject_unknown(j,
                 {"k_lo", "k_hi", "nk_data", "nk_inversion", "nx", "n_basis", "lambda", "alpha", "rho", "delta",
                  "seed", "x0", "nq", "smoothing_window", "averaging_window", "qrm_gamma", "location_estimation",
                  "target_width", "schedule", "mode", "contrast_mode", "targets"},
                 "");
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    get("k_lo", c.k_lo);
    get("k_hi", c.k_hi);
    get("nk_data", c.nk_data);
    get("nk_inversion", c.nk_inversion);
    get("nx", c.nx);
    get("n_basis", c.n_basis);
    get("lambda", c.lambda);
    get("alpha", c.alpha);
    get("rho", c.rho);
    get("delta", c.delta);
    get("seed", c.seed);
    get("x0", c.x0);
    get("nq", c.nq);
    get("smoothing_window", c.smoothing_window);
    get("averaging_window", c.averaging_window);
    get("qrm_gamma", c.qrm_gamma);
    get("location_estimation", c.location_estimation);
    get("target_width", c.target_width);
    if (j.contains("schedule")) {
      const json& s = j.at("schedule");
      if (!s.is_object()) throw ArgumentError("schedule must be an object");
      reject_unknown(s, {"step0", "shrink", "grow_every", "grow", "max_iter", "min_step", "restart_every"},
                     "schedule.");
      auto gs = [&](const char* key, auto& field) {
        if (s.contains(key)) s.at(key).get_to(field);
      };
      gs("step0", c.schedule.step0);
      gs("shrink", c.schedule.shrink);
      gs("grow_every", c.schedule.grow_every);
      gs("grow", c.schedule.grow);
      gs("max_iter", c.schedule.max_iter);
      gs("min_step", c.schedule.min_step);
      gs("restart_every", c.schedule.restart_every);
    }
    if (j.contains("mode")) {
      const auto m = j.at("mode").get<std::string>();
      if (m == "synthetic") c.mode = PipelineMode::synthetic;
      else if (m == "experimental") c.mode = PipelineMode::experimental;
      else throw ArgumentError("mode must be 'synthetic' or 'experimental'");
    }
    if (j.contains("contrast_mode")) {
      const auto m = j.at("contrast_mode").get<std::string>();
      if (m == "max") c.contrast_mode = ContrastMode::max;
      else if (m == "min") c.contrast_mode = ContrastMode::min;
      else throw ArgumentError("contrast_mode must be 'max' or 'min'");
    }
    if (j.contains("targets")) {
      c.targets.clear();
      for (const auto& t : j.at("targets")) {
        if (!t.is_array() || t.size() != 2) throw ArgumentError("each target must be [c_hat, x_loc]");
        c.targets.emplace_back(t[0].get<double>(), t[1].get<double>());
      }
    }
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("bad config value: ") + e.what());
  }
  c.validate();
  return c;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

std::string config_to_json(const PipelineConfig& c) {
  json j;
  j["k_lo"] = c.k_lo;
  j["k_hi"] = c.k_hi;
  j["nk_data"] = c.nk_data;
  j["nk_inversion"] = c.nk_inversion;
  j["nx"] = c.nx;
  j["n_basis"] = c.n_basis;
  j["lambda"] = c.lambda;
  j["alpha"] = c.alpha;
  j["rho"] = c.rho;
  j["delta"] = c.delta;
  j["seed"] = c.seed;
  j["x0"] = c.x0;
  j["nq"] = c.nq;
  j["smoothing_window"] = c.smoothing_window;
  j["averaging_window"] = c.averaging_window;
  j["qrm_gamma"] = c.qrm_gamma;
  j["location_estimation"] = c.location_estimation;
  j["target_width"] = c.target_width;
  j["schedule"] = {{"step0", c.schedule.step0},         {"shrink", c.schedule.shrink},
                   {"grow_every", c.schedule.grow_every}, {"grow", c.schedule.grow},
                   {"max_iter", c.schedule.max_iter},     {"min_step", c.schedule.min_step},
                   {"restart_every", c.schedule.restart_every}};
  j["mode"] = c.mode == PipelineMode::synthetic ? "synthetic" : "experimental";
  j["contrast_mode"] = c.contrast_mode == ContrastMode::max ? "max" : "min";
  j["targets"] = json::array();
  for (const auto& [ch, xl] : c.targets) j["targets"].push_back({ch, xl});
  return j.dump(2);
}

}  // namespace cvx1d
