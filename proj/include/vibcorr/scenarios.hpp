#pragma once

#include "vibcorr/config.hpp"
#include "vibcorr/results.hpp"

namespace vibcorr {

/// Dimer | vibration correlations over time for the two-factor model:
/// columns time_fs, negativity, discord, eof_lb. Discord measures the dimer.
ResultTable run_fig1(const ScenarioConfig& cfg, int workers = 1);

/// Low-frequency-mode sweep over g0 on dimer (x) vib (x) bath:
/// columns g0_cm1, time_fs, value (plus discord when discord_grid_n > 0),
/// rows ordered by (g0, t). Rows at g0 = 0 are checked against the bath-free model.
ResultTable run_sweep(const ScenarioConfig& cfg, int workers = 1);

/// Truncation audit: one row of sup-norm deviations between n_trunc and n_trunc + 2.
ResultTable run_convergence(const ScenarioConfig& cfg, int workers = 1);
// Same as run_convergence, plus the report it was built from.
ResultTable run_convergence(const ScenarioConfig& cfg, int workers, ConvergenceReport& report);

/// Every observable of the scenario model (bath included when g0 > 0).
ResultTable run_custom(const ScenarioConfig& cfg, int workers = 1);

// Dispatches on cfg.scenario.
ResultTable run_scenario(const ScenarioConfig& cfg, int workers = 1);

}  // namespace vibcorr
