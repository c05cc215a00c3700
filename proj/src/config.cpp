#include "vibcorr/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "vibcorr/errors.hpp"

#ifndef VIBCORR_CONFIG_DIR
#define VIBCORR_CONFIG_DIR "configs"
#endif

namespace vibcorr {

namespace {

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) throw ValidationError(key, "expected a scalar value");
  try {
    return node.as<T>();
  } catch (const YAML::BadConversion&) {
    throw ValidationError(key, "cannot read '" + node.Scalar() + "' as the expected type");
  }
}

std::vector<double> number_list(const YAML::Node& node, const std::string& key) {
  if (!node.IsSequence()) throw ValidationError(key, "expected a list of numbers");
  std::vector<double> out;
  for (const auto& item : node) out.push_back(scalar<double>(item, key));
  return out;
}

}  // namespace

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::fig1: return "fig1";
    case Scenario::sweep_pop: return "sweep_pop";
    case Scenario::sweep_neg_vib: return "sweep_neg_vib";
    case Scenario::sweep_neg_bath: return "sweep_neg_bath";
    case Scenario::convergence: return "convergence";
    case Scenario::custom: return "custom";
  }
  return "unknown";
}

Scenario scenario_from_string(const std::string& s) {
  for (Scenario c : {Scenario::fig1, Scenario::sweep_pop, Scenario::sweep_neg_vib, Scenario::sweep_neg_bath,
                     Scenario::convergence, Scenario::custom}) {
    if (to_string(c) == s) return c;
  }
  throw ValidationError("scenario", "unknown scenario '" + s + "'");
}

bool is_sweep(Scenario s) {
  return s == Scenario::sweep_pop || s == Scenario::sweep_neg_vib || s == Scenario::sweep_neg_bath;
}

std::vector<double> default_g0_sweep(double g) {
  // 21 points, linear over [0, g/5] and centred on g/10. Larger g0 at
  // omega0 ~ 1e-2 omega_vib displaces the bath mode beyond what a dense
  // Fock truncation can hold.
  constexpr int kPoints = 21;
  std::vector<double> out;
  for (int i = 0; i < kPoints; ++i) out.push_back(0.2 * g * i / (kPoints - 1));
  return out;
}

void ScenarioConfig::validate() const {
  model.validate();
  grid.validate();
  if (discord_grid_n < 0 || discord_grid_n == 1) {
    throw ValidationError("discord_grid_n", "must be 0 (disabled) or >= 2");
  }
  if (discord_refine_iters < 0) throw ValidationError("discord_refine_iters", "must be >= 0");
  for (double g0 : g0_values) {
    if (!std::isfinite(g0) || g0 < 0.0) throw ValidationError("g0_values_cm1", "entries must be finite and >= 0");
  }
  if (is_sweep(scenario) && sweep_values().empty()) {
    throw ValidationError("g0_values_cm1", "sweep scenarios need at least one g0 value");
  }
}

std::vector<double> ScenarioConfig::sweep_values() const {
  return g0_values.empty() ? default_g0_sweep(model.g) : g0_values;
}

const std::vector<std::string>& required_config_keys() {
  static const std::vector<std::string> keys = {"delta_e_cm1", "v_cm1", "omega_vib_cm1", "g_cm1", "temperature_k"};
  return keys;
}

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = {
      "scenario",      "delta_e_cm1", "v_cm1",         "omega_vib_cm1",  "g_cm1",          "temperature_k",
      "n_trunc_vib",   "omega0_cm1",  "g0_cm1",        "n_trunc_bath",   "bath_init",      "t_start_fs",
      "t_end_fs",      "n_points",    "g0_values_cm1", "discord_grid_n", "discord_refine_iters", "output_path",
      "seed"};
  return keys;
}

ScenarioConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
  if (!root.IsMap()) throw ParseError("config must be a mapping of key: value pairs", 1, 1);

  const auto& known = known_config_keys();
  std::set<std::string> present;
  for (const auto& entry : root) {
    const std::string key = entry.first.as<std::string>();
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ValidationError(key, "unknown key");
    }
    if (!present.insert(key).second) throw ValidationError(key, "key given more than once");
  }
  for (const auto& key : required_config_keys()) {
    if (!present.count(key)) throw ValidationError(key, "required key is missing");
  }

  ScenarioConfig cfg;
  auto has = [&](const char* key) { return present.count(key) > 0; };
  if (has("scenario")) cfg.scenario = scenario_from_string(scalar<std::string>(root["scenario"], "scenario"));
  ModelParams& m = cfg.model;
  m.delta_e = scalar<double>(root["delta_e_cm1"], "delta_e_cm1");
  m.v = scalar<double>(root["v_cm1"], "v_cm1");
  m.omega_vib = scalar<double>(root["omega_vib_cm1"], "omega_vib_cm1");
  m.g = scalar<double>(root["g_cm1"], "g_cm1");
  m.temperature = scalar<double>(root["temperature_k"], "temperature_k");
  if (has("n_trunc_vib")) m.n_trunc_vib = scalar<int>(root["n_trunc_vib"], "n_trunc_vib");
  if (has("omega0_cm1")) m.omega0 = scalar<double>(root["omega0_cm1"], "omega0_cm1");
  if (has("g0_cm1")) m.g0 = scalar<double>(root["g0_cm1"], "g0_cm1");
  if (has("n_trunc_bath")) m.n_trunc_bath = scalar<int>(root["n_trunc_bath"], "n_trunc_bath");
  if (has("bath_init")) m.bath_init = bath_init_from_string(scalar<std::string>(root["bath_init"], "bath_init"));
  if (has("t_start_fs")) cfg.grid.t_start = scalar<double>(root["t_start_fs"], "t_start_fs");
  if (has("t_end_fs")) cfg.grid.t_end = scalar<double>(root["t_end_fs"], "t_end_fs");
  if (has("n_points")) cfg.grid.n_points = scalar<int>(root["n_points"], "n_points");
  if (has("g0_values_cm1")) cfg.g0_values = number_list(root["g0_values_cm1"], "g0_values_cm1");
  cfg.discord_grid_n = is_sweep(cfg.scenario) ? 0 : 64;
  if (has("discord_grid_n")) cfg.discord_grid_n = scalar<int>(root["discord_grid_n"], "discord_grid_n");
  if (has("discord_refine_iters")) {
    cfg.discord_refine_iters = scalar<int>(root["discord_refine_iters"], "discord_refine_iters");
  }
  if (has("output_path")) cfg.output_path = scalar<std::string>(root["output_path"], "output_path");
  if (has("seed")) cfg.seed = scalar<std::uint64_t>(root["seed"], "seed");
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string shipped_config_path(const std::string& name) { return std::string(VIBCORR_CONFIG_DIR) + "/" + name; }

}  // namespace vibcorr
