#include "vibcorr/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "vibcorr/errors.hpp"
#include "vibcorr/parallel.hpp"

namespace vibcorr {

namespace {

// Eigen-ensemble members of rho0 lighter than this are dropped.
constexpr double kEnsembleWeightFloor = 1e-15;

void require_same_space(const Operator& h, const DensityMatrix& rho0) {
  if (!(h.space == rho0.space())) throw DimMismatch("Hamiltonian and state live on different spaces");
}

std::vector<std::string> labels_except(const HilbertSpace& space, const std::string& excluded) {
  std::vector<std::string> out;
  for (const auto& f : space.factors()) {
    if (f.label != excluded) out.push_back(f.label);
  }
  return out;
}

double sup_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

void TimeGrid::validate() const {
  if (!std::isfinite(t_start) || !std::isfinite(t_end)) throw ValidationError("t_start_fs", "must be finite");
  if (!(t_end > t_start)) throw ValidationError("t_end_fs", "must exceed t_start_fs");
  if (n_points < 2) throw ValidationError("n_points", "must be >= 2");
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> t(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) t[static_cast<std::size_t>(i)] = at(i);
  return t;
}

Propagator::Propagator(const Operator& h, const DensityMatrix& rho0)
    : space_(rho0.space()), h_spectrum_(eigh(h.matrix)) {
  require_same_space(h, rho0);
  const SpectralDecomposition ensemble = eigh(rho0.matrix());
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < ensemble.dim(); ++k) {
    if (ensemble.values(k) > kEnsembleWeightFloor) kept.push_back(k);
  }
  ComplexMatrix members(ensemble.dim(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const Eigen::Index k = kept[c];
    members.col(static_cast<Eigen::Index>(c)) = std::sqrt(ensemble.values(k)) * ensemble.vectors.col(k);
  }
  amplitudes_ = h_spectrum_.vectors.adjoint() * members;
  if (h_spectrum_.vectors.imag().cwiseAbs().maxCoeff() == 0.0) real_vectors_ = h_spectrum_.vectors.real();
}

ComplexMatrix Propagator::evolved_members(double t_fs) const {
  ComplexVector phases(h_spectrum_.dim());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::polar(1.0, -kTwoPiC * h_spectrum_.values(i) * t_fs);
  }
  const ComplexMatrix rotated = phases.asDiagonal() * amplitudes_;
  if (real_vectors_.size() == 0) return h_spectrum_.vectors * rotated;
  ComplexMatrix evolved(rotated.rows(), rotated.cols());
  evolved.real() = real_vectors_ * rotated.real();
  evolved.imag() = real_vectors_ * rotated.imag();
  return evolved;
}

DensityMatrix Propagator::state_at(double t_fs) const {
  const ComplexMatrix evolved = evolved_members(t_fs);
  return DensityMatrix::trusted(space_, evolved * evolved.adjoint());
}

DensityMatrix Propagator::reduced_state_at(double t_fs, const std::vector<std::string>& keep) const {
  const HilbertSpace kept = space_.subspace(keep);
  std::vector<std::string> order;
  for (const auto& f : kept.factors()) order.push_back(f.label);
  for (const auto& f : space_.factors()) {
    if (!kept.contains(f.label)) order.push_back(f.label);
  }
  // Position of each (kept, traced) basis state in the original layout.
  const Eigen::Index dk = kept.dim();
  const Eigen::Index dt = space_.dim() / dk;
  const HilbertSpace reordered = [&] {
    std::vector<Factor> f;
    for (const auto& l : order) f.push_back({l, space_.dim_of(l)});
    return HilbertSpace(std::move(f));
  }();
  std::vector<Eigen::Index> source(static_cast<std::size_t>(space_.dim()));
  {
    std::vector<Eigen::Index> strides(space_.size(), 1);
    for (std::size_t k = space_.size(); k-- > 1;) strides[k - 1] = strides[k] * space_.factors()[k].dim;
    std::vector<Eigen::Index> digits(order.size(), 0);
    for (Eigen::Index i = 0; i < space_.dim(); ++i) {
      Eigen::Index old = 0;
      for (std::size_t k = 0; k < order.size(); ++k) old += digits[k] * strides[space_.position(order[k])];
      source[static_cast<std::size_t>(i)] = old;
      for (std::size_t k = order.size(); k-- > 0;) {
        if (++digits[k] < reordered.factors()[k].dim) break;
        digits[k] = 0;
      }
    }
  }
  const ComplexMatrix evolved = evolved_members(t_fs);
  ComplexMatrix reduced = ComplexMatrix::Zero(dk, dk);
  ComplexMatrix member(dk, dt);
  for (Eigen::Index c = 0; c < evolved.cols(); ++c) {
    for (Eigen::Index a = 0; a < dk; ++a) {
      for (Eigen::Index b = 0; b < dt; ++b) member(a, b) = evolved(source[static_cast<std::size_t>(a * dt + b)], c);
    }
    reduced.noalias() += member * member.adjoint();
  }
  return DensityMatrix::trusted(kept, reduced);
}

std::vector<DensityMatrix> propagate(const DensityMatrix& rho0, const Operator& h, const TimeGrid& grid, int workers) {
  grid.validate();
  const Propagator propagator(h, rho0);
  std::vector<DensityMatrix> states(static_cast<std::size_t>(grid.n_points), rho0);
  parallel_for(states.size(), workers,
               [&](std::size_t i) { states[i] = propagator.state_at(grid.at(static_cast<int>(i))); });
  return states;
}

std::vector<DensityMatrix> rk4_reference(const DensityMatrix& rho0, const Operator& h, const TimeGrid& grid,
                                         double dt_max_fs) {
  grid.validate();
  require_same_space(h, rho0);
  if (!(dt_max_fs > 0.0)) throw ValidationError("dt_max_fs", "must be > 0");
  const ComplexMatrix generator = Complex(0.0, -kTwoPiC) * h.matrix;
  auto rhs = [&](const ComplexMatrix& rho) -> ComplexMatrix {
    ComplexMatrix g_rho = generator * rho;
    return g_rho + g_rho.adjoint();  // -i k [H, rho]
  };

  std::vector<DensityMatrix> out;
  out.reserve(static_cast<std::size_t>(grid.n_points));
  ComplexMatrix rho = rho0.matrix();
  double t = 0.0;
  for (double target : grid.times()) {
    const double span = target - t;
    const int steps = static_cast<int>(std::ceil(std::abs(span) / dt_max_fs - 1e-12));
    if (steps > 0) {
      const double dt = span / steps;
      for (int s = 0; s < steps; ++s) {
        const ComplexMatrix k1 = rhs(rho);
        const ComplexMatrix k2 = rhs(rho + 0.5 * dt * k1);
        const ComplexMatrix k3 = rhs(rho + 0.5 * dt * k2);
        const ComplexMatrix k4 = rhs(rho + dt * k3);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
    }
    t = target;
    const double drift = std::abs(rho.trace().real() - 1.0);
    if (drift > 1e-6) throw StepTooLarge(drift, t);
    out.push_back(DensityMatrix::trusted(rho0.space(), rho));
  }
  return out;
}

std::vector<double> TimeSeries::column(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ValidationError(name, "no such observable in time series");
  const auto k = static_cast<std::size_t>(it - names.begin());
  std::vector<double> col;
  col.reserve(values.size());
  for (const auto& row : values) col.push_back(row[k]);
  return col;
}

TimeSeries evolve_observables(const DensityMatrix& rho0, const Operator& h, const TimeGrid& grid,
                              const std::vector<NamedObservable>& observables, bool retain_states, int workers) {
  grid.validate();
  const Propagator propagator(h, rho0);
  TimeSeries series;
  series.grid = grid;
  for (const auto& o : observables) series.names.push_back(o.name);
  series.values.assign(static_cast<std::size_t>(grid.n_points), std::vector<double>(observables.size(), 0.0));
  if (retain_states) series.states.assign(static_cast<std::size_t>(grid.n_points), rho0);

  parallel_for(series.values.size(), workers, [&](std::size_t i) {
    DensityMatrix rho = propagator.state_at(grid.at(static_cast<int>(i)));
    for (std::size_t k = 0; k < observables.size(); ++k) series.values[i][k] = observables[k].fn(rho);
    if (retain_states) series.states[i] = std::move(rho);
  });
  return series;
}

double population_x_minus(const DensityMatrix& rho, const ExcitonBasis& basis) {
  const ComplexMatrix dimer = partial_trace(rho.matrix(), rho.space(), {labels::kDimer});
  const double p = (basis.x_minus.adjoint() * dimer * basis.x_minus)(0, 0).real();
  return std::clamp(p, 0.0, 1.0);
}

double mandel_q(const DensityMatrix& rho, const std::string& mode_label) {
  const ComplexMatrix mode = partial_trace(rho.matrix(), rho.space(), {mode_label});
  double mean = 0.0;
  double second = 0.0;
  for (Eigen::Index n = 0; n < mode.rows(); ++n) {
    const double p = mode(n, n).real();
    mean += n * p;
    second += static_cast<double>(n * n) * p;
  }
  if (mean < 1e-12) throw VacuumExpectation("Mandel Q undefined: <n> = " + std::to_string(mean));
  return (second - mean * mean) / mean - 1.0;
}

NamedObservable make_observable(const std::string& name, const ModelParams& p, const DiscordOptions& discord_options) {
  using namespace observables;
  if (name == kPopulationXMinus) {
    const ExcitonBasis basis = exciton_basis(p);
    return {name, [basis](const DensityMatrix& rho) { return population_x_minus(rho, basis); }};
  }
  if (name == kNegativity) {
    return {name, [](const DensityMatrix& rho) { return negativity(rho, labels::kDimer); }};
  }
  if (name == kDiscord) {
    return {name, [discord_options](const DensityMatrix& rho) {
              return discord(rho, labels::kDimer, discord_options).value;
            }};
  }
  if (name == kEofLowerBound) {
    return {name, [](const DensityMatrix& rho) {
              return eof_lower_bound(rho, {{labels::kDimer}, labels_except(rho.space(), labels::kDimer)});
            }};
  }
  if (name == kMutualInformation) {
    return {name, [](const DensityMatrix& rho) {
              return mutual_information(rho, {{labels::kDimer}, labels_except(rho.space(), labels::kDimer)});
            }};
  }
  throw ValidationError("observables", "unknown observable '" + name + "'");
}

ScenarioModel build_scenario_model(const ModelParams& p, const TimeGrid& grid, bool force_bath) {
  p.validate();
  const bool with_bath = force_bath || p.g0 > 0.0;
  ModelParams resolved = with_bath ? with_resolved_bath(p, std::max(std::abs(grid.t_start), std::abs(grid.t_end))) : p;
  Operator h = with_bath ? build_total_hamiltonian(resolved) : build_effective_hamiltonian(resolved, resolved.n_trunc_vib);
  DensityMatrix rho0 = initial_state(resolved, with_bath);
  return {resolved, with_bath, std::move(h), std::move(rho0)};
}

bool ConvergenceReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [&](const ConvergenceEntry& e) { return e.deviation < tolerance; });
}

ConvergenceReport measure_convergence(const ModelParams& p, const TimeGrid& grid,
                                      const std::vector<std::string>& observable_names,
                                      const DiscordOptions& discord_options, int workers) {
  const ScenarioModel low = build_scenario_model(p, grid);
  ModelParams high_params = low.params;
  high_params.n_trunc_vib += 2;
  if (low.with_bath) high_params.n_trunc_bath += 2;
  const ScenarioModel high = build_scenario_model(high_params, grid, low.with_bath);

  std::vector<NamedObservable> obs;
  for (const auto& name : observable_names) obs.push_back(make_observable(name, p, discord_options));
  const TimeSeries a = evolve_observables(low.initial, low.hamiltonian, grid, obs, false, workers);
  const TimeSeries b = evolve_observables(high.initial, high.hamiltonian, grid, obs, false, workers);

  ConvergenceReport report;
  report.n_trunc_vib = low.params.n_trunc_vib;
  report.n_trunc_vib_high = high_params.n_trunc_vib;
  if (low.with_bath) {
    report.n_trunc_bath = low.params.n_trunc_bath;
    report.n_trunc_bath_high = high_params.n_trunc_bath;
  }
  for (const auto& name : observable_names) {
    report.entries.push_back({name, sup_deviation(a.column(name), b.column(name))});
  }
  return report;
}

ConvergenceReport convergence_check(const ModelParams& p, const TimeGrid& grid,
                                    const std::vector<std::string>& observable_names,
                                    const DiscordOptions& discord_options, int workers) {
  ConvergenceReport report = measure_convergence(p, grid, observable_names, discord_options, workers);
  const ConvergenceEntry* worst = nullptr;
  for (const auto& e : report.entries) {
    if (e.deviation >= report.tolerance && (!worst || e.deviation > worst->deviation)) worst = &e;
  }
  if (worst) throw NotConverged(worst->observable, worst->deviation);
  return report;
}

}  // namespace vibcorr
