#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vibcorr/dynamics.hpp"
#include "vibcorr/model.hpp"

namespace vibcorr {

enum class Scenario { fig1, sweep_pop, sweep_neg_vib, sweep_neg_bath, convergence, custom };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);
bool is_sweep(Scenario s);

/// Everything a run needs. Key names in config files match the field comments.
struct ScenarioConfig {
  ModelParams model;                 // delta_e_cm1, v_cm1, omega_vib_cm1, g_cm1, temperature_k, n_trunc_vib,
                                     // omega0_cm1, g0_cm1, n_trunc_bath, bath_init
  TimeGrid grid;                     // t_start_fs, t_end_fs, n_points
  Scenario scenario = Scenario::fig1;  // scenario
  std::vector<double> g0_values;     // g0_values_cm1 (empty: default sweep)
  int discord_grid_n = 64;           // discord_grid_n (0 disables discord)
  int discord_refine_iters = 50;     // discord_refine_iters
  std::string output_path;           // output_path
  std::uint64_t seed = 20140601;     // seed

  // Throws ValidationError naming the field.
  void validate() const;
  DiscordOptions discord_options() const { return {discord_grid_n, discord_refine_iters}; }
  // g0_values, or the default sweep when none were given.
  std::vector<double> sweep_values() const;
};

// Keys every config file must define.
const std::vector<std::string>& required_config_keys();
const std::vector<std::string>& known_config_keys();

/// Default g0 sweep for coupling g.
std::vector<double> default_g0_sweep(double g);

/// Parses a flat YAML mapping. Unknown keys and missing required keys raise
/// ValidationError; malformed YAML raises ParseError with line and column.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

// Path of a config shipped with the source tree (configs/<name>).
std::string shipped_config_path(const std::string& name);

}  // namespace vibcorr
