#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vibcorr/errors.hpp"
#include "vibcorr/scenarios.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

void write_or_print(const vibcorr::ResultTable& table, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << vibcorr::render_results(table);
  } else {
    vibcorr::write_results(table, out);
    std::cerr << "wrote " << table.rows.size() << " rows to " << out << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exciton-vibration dimer dynamics and system-environment correlations"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  int workers = 1;

  auto add_common = [&](CLI::App* sub, bool with_output) {
    sub->add_option("--config", config_path, "Scenario config (YAML key: value)")->required()->check(CLI::ExistingFile);
    if (with_output) {
      sub->add_option("--out", out_path, "CSV output path (default: output_path from config, else stdout)");
      sub->add_option("--workers", workers, "Concurrent worker threads")->check(CLI::PositiveNumber);
    }
  };
  CLI::App* fig1 = app.add_subcommand("fig1", "Dimer|vibration negativity, discord and EoF bound over time");
  CLI::App* sweep = app.add_subcommand("sweep", "Low-frequency-mode g0 sweep (sweep_pop, sweep_neg_vib, sweep_neg_bath)");
  CLI::App* convergence = app.add_subcommand("convergence", "Truncation audit: n_trunc vs n_trunc + 2");
  CLI::App* run = app.add_subcommand("run", "Run whichever scenario the config names");
  CLI::App* validate = app.add_subcommand("validate", "Parse and validate a config without running it");
  for (CLI::App* sub : {fig1, sweep, convergence, run}) add_common(sub, true);
  add_common(validate, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    vibcorr::ScenarioConfig cfg = vibcorr::load_config(config_path);
    const std::string out = out_path.empty() ? cfg.output_path : out_path;

    if (validate->parsed()) {
      std::cout << "config OK: scenario " << vibcorr::to_string(cfg.scenario) << '\n';
      return kExitOk;
    }
    if (fig1->parsed()) {
      if (cfg.scenario == vibcorr::Scenario::custom) {
        write_or_print(vibcorr::run_custom(cfg, workers), out);
      } else {
        write_or_print(vibcorr::run_fig1(cfg, workers), out);
      }
      return kExitOk;
    }
    if (sweep->parsed()) {
      if (!vibcorr::is_sweep(cfg.scenario)) {
        throw vibcorr::ValidationError("scenario", "the sweep command needs sweep_pop, sweep_neg_vib or sweep_neg_bath");
      }
      write_or_print(vibcorr::run_sweep(cfg, workers), out);
      return kExitOk;
    }
    if (convergence->parsed()) {
      vibcorr::ConvergenceReport report;
      write_or_print(vibcorr::run_convergence(cfg, workers, report), out);
      for (const auto& e : report.entries) {
        std::cerr << e.observable << ": sup deviation " << e.deviation << '\n';
      }
      if (!report.passed()) {
        std::cerr << "not converged at tolerance " << report.tolerance << '\n';
        return kExitNumerical;
      }
      return kExitOk;
    }
    write_or_print(vibcorr::run_scenario(cfg, workers), out);
    return kExitOk;
  } catch (const vibcorr::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const vibcorr::ParseError& e) {
    std::cerr << "config " << e.what() << '\n';
    return kExitValidation;
  } catch (const vibcorr::NotConverged& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const vibcorr::NoConvergence& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const vibcorr::StepTooLarge& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const vibcorr::ReductionMismatch& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
