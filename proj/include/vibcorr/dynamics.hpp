#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vibcorr/correlations.hpp"
#include "vibcorr/model.hpp"

namespace vibcorr {

/// Uniform time grid in fs, both ends included.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1000.0;
  int n_points = 501;

  void validate() const;  // throws ValidationError
  double step() const { return (t_end - t_start) / (n_points - 1); }
  double at(int i) const { return t_start + i * step(); }
  std::vector<double> times() const;
};

/// Closed evolution rho(t) = U(t) rho0 U(t)^dag for a time-independent H, with
/// rho0 defined at t = 0. H is diagonalised once; rho0 is split into its
/// eigen-ensemble so each time point costs O(dim^2 * rank).
class Propagator {
 public:
  Propagator(const Operator& h, const DensityMatrix& rho0);

  DensityMatrix state_at(double t_fs) const;
  // Tr over every factor not in `keep`, without forming the full state.
  DensityMatrix reduced_state_at(double t_fs, const std::vector<std::string>& keep) const;
  // Columns sqrt(w_k) |psi_k(t)>, so rho(t) = M M^dag.
  ComplexMatrix evolved_members(double t_fs) const;

  const SpectralDecomposition& spectrum() const { return h_spectrum_; }
  Eigen::Index ensemble_rank() const { return amplitudes_.cols(); }

 private:
  HilbertSpace space_;
  SpectralDecomposition h_spectrum_;
  // Set when H is real symmetric; halves the cost of each time step.
  Eigen::MatrixXd real_vectors_;
  // Columns: sqrt(w_k) * V^dag |psi_k> for each ensemble member of rho0.
  ComplexMatrix amplitudes_;
};

// One DensityMatrix per grid point.
std::vector<DensityMatrix> propagate(const DensityMatrix& rho0, const Operator& h, const TimeGrid& grid,
                                     int workers = 1);

/// Classical RK4 on d rho/dt = -i kTwoPiC [H, rho], from t = 0 to each grid time
/// with steps no longer than dt_max_fs. No renormalisation; throws StepTooLarge
/// when |tr rho - 1| exceeds 1e-6.
std::vector<DensityMatrix> rk4_reference(const DensityMatrix& rho0, const Operator& h, const TimeGrid& grid,
                                         double dt_max_fs = 0.1);

using Observable = std::function<double(const DensityMatrix&)>;

struct NamedObservable {
  std::string name;
  Observable fn;
};

/// Observable records on a grid; values[t][k] belongs to names[k].
struct TimeSeries {
  TimeGrid grid;
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;
  std::vector<DensityMatrix> states;  // empty unless retained

  std::vector<double> column(const std::string& name) const;
};

TimeSeries evolve_observables(const DensityMatrix& rho0, const Operator& h, const TimeGrid& grid,
                              const std::vector<NamedObservable>& observables, bool retain_states = false,
                              int workers = 1);

/// Tr[(|X-><X-| (x) 1) rho]; needs a "dimer" factor.
double population_x_minus(const DensityMatrix& rho, const ExcitonBasis& basis);

/// (<n^2> - <n>^2)/<n> - 1 on the reduced state of `mode_label`.
/// Throws VacuumExpectation when <n> < 1e-12.
double mandel_q(const DensityMatrix& rho, const std::string& mode_label);

// Observables understood by convergence_check and the runner.
namespace observables {
inline const std::string kPopulationXMinus = "p_x_minus";
inline const std::string kNegativity = "negativity";
inline const std::string kDiscord = "discord";
inline const std::string kEofLowerBound = "eof_lb";
inline const std::string kMutualInformation = "mutual_information";
}  // namespace observables

/// Builds a named observable on the dimer | rest split of the model described by `p`.
NamedObservable make_observable(const std::string& name, const ModelParams& p, const DiscordOptions& discord_options);

/// Model used by the scenarios: dimer (x) vib when g0 == 0, otherwise dimer (x) vib (x) bath.
struct ScenarioModel {
  ModelParams params;  // bath truncation resolved
  bool with_bath = false;
  Operator hamiltonian;
  DensityMatrix initial;
};
ScenarioModel build_scenario_model(const ModelParams& p, const TimeGrid& grid, bool force_bath = false);

struct ConvergenceEntry {
  std::string observable;
  double deviation = 0.0;
};

struct ConvergenceReport {
  int n_trunc_vib = 0;
  int n_trunc_vib_high = 0;
  int n_trunc_bath = 0;       // 0 when no bath factor
  int n_trunc_bath_high = 0;
  std::vector<ConvergenceEntry> entries;
  double tolerance = 1e-6;

  bool passed() const;
};

/// Reruns the scenario at n_trunc_vib + 2 (and bath truncation + 2 when a bath
/// is present) and reports the sup-norm deviation of each observable.
ConvergenceReport measure_convergence(const ModelParams& p, const TimeGrid& grid,
                                      const std::vector<std::string>& observable_names,
                                      const DiscordOptions& discord_options = {}, int workers = 1);

// As measure_convergence, but throws NotConverged for the worst offending observable.
ConvergenceReport convergence_check(const ModelParams& p, const TimeGrid& grid,
                                    const std::vector<std::string>& observable_names,
                                    const DiscordOptions& discord_options = {}, int workers = 1);

}  // namespace vibcorr
