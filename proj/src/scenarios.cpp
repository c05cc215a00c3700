#include "vibcorr/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

#include "vibcorr/errors.hpp"
#include "vibcorr/parallel.hpp"

namespace vibcorr {

namespace {

constexpr double kSweepConsistencyTol = 1e-9;

std::string join(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + format_value(values[i]);
  return out + "]";
}

void echo_config(ResultTable& table, const ScenarioConfig& cfg) {
  const ModelParams& m = cfg.model;
  table.set_meta("vibcorr_version", kVersion);
  table.set_meta("scenario", to_string(cfg.scenario));
  table.set_meta("delta_e_cm1", format_value(m.delta_e));
  table.set_meta("v_cm1", format_value(m.v));
  table.set_meta("omega_vib_cm1", format_value(m.omega_vib));
  table.set_meta("g_cm1", format_value(m.g));
  table.set_meta("temperature_k", format_value(m.temperature));
  table.set_meta("n_trunc_vib", std::to_string(m.n_trunc_vib));
  table.set_meta("omega0_cm1", format_value(m.omega0));
  table.set_meta("g0_cm1", format_value(m.g0));
  table.set_meta("n_trunc_bath", m.n_trunc_bath == 0 ? "auto" : std::to_string(m.n_trunc_bath));
  table.set_meta("bath_init", to_string(m.bath_init));
  table.set_meta("t_start_fs", format_value(cfg.grid.t_start));
  table.set_meta("t_end_fs", format_value(cfg.grid.t_end));
  table.set_meta("n_points", std::to_string(cfg.grid.n_points));
  table.set_meta("time_window_note", "time window is a run choice; the default 0-1000 fs covers ~2.5 Rabi periods");
  table.set_meta("discord_grid_n", std::to_string(cfg.discord_grid_n));
  table.set_meta("discord_refine_iters", std::to_string(cfg.discord_refine_iters));
  table.set_meta("seed", std::to_string(cfg.seed));
  table.set_meta("units", "energies cm^-1, time fs, entropies bits");
}

// Timestamp and wall time share one line so identical runs differ only there.
void stamp(ResultTable& table, std::chrono::steady_clock::time_point started) {
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  const std::time_t now = std::time(nullptr);
  char when[32];
  std::strftime(when, sizeof when, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  std::ostringstream line;
  line << "timestamp=" << when << " wall_time_s=" << format_value(wall);
  table.set_meta(kRunStampKey, line.str());
}

// Factors a sweep scenario keeps before evaluating its observable.
std::vector<std::string> sweep_factors(Scenario s) {
  switch (s) {
    case Scenario::sweep_neg_vib: return {labels::kDimer, labels::kVib};
    case Scenario::sweep_neg_bath: return {labels::kDimer, labels::kBath};
    default: return {labels::kDimer};
  }
}

double sweep_value(const DensityMatrix& pair, Scenario s, const ExcitonBasis& basis) {
  if (s == Scenario::sweep_pop) return population_x_minus(pair, basis);
  return negativity(pair, labels::kDimer);
}

struct SweepJob {
  double g0 = 0.0;
  int bath_trunc = 0;
  std::vector<std::vector<double>> rows;
};

void check_uncoupled_rows(const ScenarioConfig& cfg, const SweepJob& job) {
  ModelParams bare = cfg.model;
  bare.g0 = 0.0;
  const ExcitonBasis basis = exciton_basis(bare);
  std::vector<double> reference(job.rows.size(), 0.0);
  if (cfg.scenario != Scenario::sweep_neg_bath) {
    const auto states = propagate(initial_state(bare), build_effective_hamiltonian(bare, bare.n_trunc_vib), cfg.grid);
    for (std::size_t i = 0; i < states.size(); ++i) {
      reference[i] = cfg.scenario == Scenario::sweep_pop ? population_x_minus(states[i], basis)
                                                        : negativity(states[i], labels::kDimer);
    }
  }
  for (std::size_t i = 0; i < job.rows.size(); ++i) {
    const double deviation = std::abs(job.rows[i][2] - reference[i]);
    if (deviation > kSweepConsistencyTol) {
      throw Error("sweep consistency gate failed: g0 = 0 row deviates from the bath-free run by " +
                  format_value(deviation));
    }
  }
}

}  // namespace

ResultTable run_fig1(const ScenarioConfig& cfg, int workers) {
  const auto started = std::chrono::steady_clock::now();
  cfg.validate();
  ModelParams p = cfg.model;
  p.g0 = 0.0;
  const DensityMatrix rho0 = initial_state(p);
  const Operator h = build_effective_hamiltonian(p, p.n_trunc_vib);
  const Bipartition parts{{labels::kDimer}, {labels::kVib}};
  const DiscordOptions discord_options = cfg.discord_options();

  std::vector<NamedObservable> obs = {
      {"negativity", [](const DensityMatrix& r) { return negativity(r, labels::kDimer); }},
      {"discord",
       [&](const DensityMatrix& r) {
         return discord_options.grid_n > 0 ? discord(r, labels::kDimer, discord_options).value : std::nan("");
       }},
      {"eof_lb", [&](const DensityMatrix& r) { return eof_lower_bound(r, parts); }},
  };
  const TimeSeries series = evolve_observables(rho0, h, cfg.grid, obs, false, workers);

  ResultTable table;
  table.columns = {"time_fs", "negativity", "discord", "eof_lb"};
  echo_config(table, cfg);
  table.set_meta("model", "dimer (x) vib, H_eff");
  for (int i = 0; i < cfg.grid.n_points; ++i) {
    const auto& v = series.values[static_cast<std::size_t>(i)];
    table.add_row({cfg.grid.at(i), v[0], v[1], v[2]});
  }
  stamp(table, started);
  return table;
}

ResultTable run_sweep(const ScenarioConfig& cfg, int workers) {
  const auto started = std::chrono::steady_clock::now();
  cfg.validate();
  if (!is_sweep(cfg.scenario)) throw ValidationError("scenario", "run_sweep needs a sweep_* scenario");
  const std::vector<double> g0_values = cfg.sweep_values();
  const DiscordOptions discord_options = cfg.discord_options();
  const bool with_discord = discord_options.grid_n > 0;
  const ExcitonBasis basis = exciton_basis(cfg.model);

  std::vector<SweepJob> jobs(g0_values.size());
  parallel_for(jobs.size(), workers, [&](std::size_t j) {
    SweepJob& job = jobs[j];
    job.g0 = g0_values[j];
    ModelParams p = cfg.model;
    p.g0 = job.g0;
    const ScenarioModel model = build_scenario_model(p, cfg.grid, true);
    job.bath_trunc = model.params.n_trunc_bath;
    const Propagator propagator(model.hamiltonian, model.initial);
    for (int i = 0; i < cfg.grid.n_points; ++i) {
      const double t = cfg.grid.at(i);
      const DensityMatrix pair = with_discord && cfg.scenario == Scenario::sweep_pop
                                     ? propagator.state_at(t)
                                     : propagator.reduced_state_at(t, sweep_factors(cfg.scenario));
      std::vector<double> row = {job.g0, t, sweep_value(pair, cfg.scenario, basis)};
      if (with_discord) row.push_back(discord(pair, labels::kDimer, discord_options).value);
      job.rows.push_back(std::move(row));
    }
  });

  for (const auto& job : jobs) {
    if (job.g0 == 0.0) check_uncoupled_rows(cfg, job);
  }

  ResultTable table;
  table.columns = {"g0_cm1", "time_fs", "value"};
  if (with_discord) table.columns.push_back("discord");
  echo_config(table, cfg);
  table.set_meta("model", "dimer (x) vib (x) bath");
  table.set_meta("g0_values_cm1", join(g0_values));
  std::string truncations;
  for (const auto& job : jobs) {
    truncations += (truncations.empty() ? "" : "; ") + format_value(job.g0) + "=" + std::to_string(job.bath_trunc);
  }
  table.set_meta("n_trunc_bath_by_g0", truncations);
  const char* quantity = cfg.scenario == Scenario::sweep_pop       ? "P_X- population"
                         : cfg.scenario == Scenario::sweep_neg_vib ? "negativity dimer|vib of Tr_bath rho"
                                                                   : "negativity dimer|bath of Tr_vib rho";
  table.set_meta("value", quantity);
  for (auto& job : jobs) {
    for (auto& row : job.rows) table.add_row(std::move(row));
  }
  stamp(table, started);
  return table;
}

ResultTable run_convergence(const ScenarioConfig& cfg, int workers, ConvergenceReport& report) {
  const auto started = std::chrono::steady_clock::now();
  cfg.validate();
  std::vector<std::string> names = {observables::kPopulationXMinus, observables::kNegativity};
  if (cfg.discord_grid_n > 0) names.push_back(observables::kDiscord);
  report = measure_convergence(cfg.model, cfg.grid, names, cfg.discord_options(), workers);

  ResultTable table;
  table.columns = {"n_trunc_vib", "n_trunc_vib_high", "n_trunc_bath", "n_trunc_bath_high"};
  std::vector<double> row = {static_cast<double>(report.n_trunc_vib), static_cast<double>(report.n_trunc_vib_high),
                             static_cast<double>(report.n_trunc_bath), static_cast<double>(report.n_trunc_bath_high)};
  for (const auto& e : report.entries) {
    table.columns.push_back("dev_" + e.observable);
    row.push_back(e.deviation);
  }
  echo_config(table, cfg);
  table.set_meta("tolerance", format_value(report.tolerance));
  table.set_meta("converged", report.passed() ? "yes" : "no");
  table.add_row(std::move(row));
  stamp(table, started);
  return table;
}

ResultTable run_convergence(const ScenarioConfig& cfg, int workers) {
  ConvergenceReport report;
  return run_convergence(cfg, workers, report);
}

ResultTable run_custom(const ScenarioConfig& cfg, int workers) {
  const auto started = std::chrono::steady_clock::now();
  cfg.validate();
  const ScenarioModel model = build_scenario_model(cfg.model, cfg.grid);
  std::vector<NamedObservable> obs;
  for (const auto& name : {observables::kPopulationXMinus, observables::kNegativity, observables::kEofLowerBound,
                           observables::kMutualInformation}) {
    obs.push_back(make_observable(name, model.params, cfg.discord_options()));
  }
  if (cfg.discord_grid_n > 0) obs.push_back(make_observable(observables::kDiscord, model.params, cfg.discord_options()));
  obs.push_back({"mandel_q_vib", [](const DensityMatrix& r) {
                   try {
                     return mandel_q(r, labels::kVib);
                   } catch (const VacuumExpectation&) {
                     return std::nan("");
                   }
                 }});
  const TimeSeries series = evolve_observables(model.initial, model.hamiltonian, cfg.grid, obs, false, workers);

  ResultTable table;
  table.columns = {"time_fs"};
  for (const auto& o : obs) table.columns.push_back(o.name);
  echo_config(table, cfg);
  table.set_meta("model", model.with_bath ? "dimer (x) vib (x) bath" : "dimer (x) vib");
  if (model.with_bath) table.set_meta("n_trunc_bath_resolved", std::to_string(model.params.n_trunc_bath));
  for (int i = 0; i < cfg.grid.n_points; ++i) {
    std::vector<double> row = {cfg.grid.at(i)};
    const auto& v = series.values[static_cast<std::size_t>(i)];
    row.insert(row.end(), v.begin(), v.end());
    table.add_row(std::move(row));
  }
  stamp(table, started);
  return table;
}

ResultTable run_scenario(const ScenarioConfig& cfg, int workers) {
  switch (cfg.scenario) {
    case Scenario::fig1: return run_fig1(cfg, workers);
    case Scenario::convergence: return run_convergence(cfg, workers);
    case Scenario::custom: return run_custom(cfg, workers);
    default: return run_sweep(cfg, workers);
  }
}

}  // namespace vibcorr
