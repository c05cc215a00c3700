#include "vibcorr/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vibcorr/errors.hpp"

namespace vibcorr {

namespace {

ComplexMatrix sigma_plus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;  // |excited><ground|
  return m;
}

ComplexMatrix excited_projector() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  return m;
}

void require_bath_truncation(const ModelParams& p) {
  if (p.n_trunc_bath < 1) throw ValidationError("n_trunc_bath", "must be resolved to >= 1 before building");
}

}  // namespace

std::string to_string(BathInit b) { return b == BathInit::vacuum ? "vacuum" : "thermal"; }

BathInit bath_init_from_string(const std::string& s) {
  if (s == "vacuum") return BathInit::vacuum;
  if (s == "thermal") return BathInit::thermal;
  throw ValidationError("bath_init", "expected 'vacuum' or 'thermal', got '" + s + "'");
}

void ModelParams::validate() const {
  auto finite = [](const char* field, double value) {
    if (!std::isfinite(value)) throw ValidationError(field, "must be finite");
  };
  finite("delta_e_cm1", delta_e);
  finite("v_cm1", v);
  finite("omega_vib_cm1", omega_vib);
  finite("g_cm1", g);
  finite("temperature_k", temperature);
  finite("omega0_cm1", omega0);
  finite("g0_cm1", g0);
  if (omega_vib <= 0.0) throw ValidationError("omega_vib_cm1", "must be > 0");
  if (n_trunc_vib < 1) throw ValidationError("n_trunc_vib", "must be >= 1");
  if (temperature < 0.0) throw ValidationError("temperature_k", "must be >= 0");
  if (g0 < 0.0) throw ValidationError("g0_cm1", "must be >= 0");
  if (omega0 <= 0.0) throw ValidationError("omega0_cm1", "must be > 0");
  if (n_trunc_bath < 0) throw ValidationError("n_trunc_bath", "must be >= 0 (0 selects automatic sizing)");
}

ExcitonBasis exciton_basis(const ModelParams& p) {
  if (p.delta_e == 0.0 && p.v == 0.0) throw DegenerateDimer("exciton basis undefined for delta_e = V = 0");
  ExcitonBasis b;
  const double splitting = std::sqrt(p.delta_e * p.delta_e + 4.0 * p.v * p.v);
  b.lambda_plus = 0.5 * splitting;
  b.lambda_minus = -0.5 * splitting;
  b.mixing_angle = std::atan2(2.0 * p.v, p.delta_e);
  const double c = std::cos(0.5 * b.mixing_angle);
  const double s = std::sin(0.5 * b.mixing_angle);
  b.x_plus = ComplexVector(2);
  b.x_plus << c, s;
  b.x_minus = ComplexVector(2);
  b.x_minus << s, -c;
  return b;
}

ComplexMatrix dimer_hamiltonian(const ModelParams& p) { return 0.5 * p.delta_e * pauli_z() + p.v * pauli_x(); }

Operator build_full_hamiltonian(const ModelParams& p, int n_trunc, PhononModes modes) {
  if (n_trunc < 1) throw DimMismatch("n_trunc must be >= 1");
  const Eigen::Index d = n_trunc + 1;
  const bool collective = modes == PhononModes::collective;
  const std::string& m1 = collective ? labels::kCenterOfMass : labels::kMode1;
  const std::string& m2 = collective ? labels::kRelative : labels::kMode2;
  const HilbertSpace space{{labels::kSite1, 2}, {labels::kSite2, 2}, {m1, d}, {m2, d}};

  const Ladder ladder = ladder_operators(n_trunc);
  const ComplexMatrix a1 = lift(ladder.annihilate, space, m1);
  const ComplexMatrix a2 = lift(ladder.annihilate, space, m2);
  ComplexMatrix b1;
  ComplexMatrix b2;
  if (collective) {
    const double r = std::numbers::sqrt2 / 2.0;
    b1 = r * (a1 - a2);  // a1 = b+, a2 = b-
    b2 = r * (a1 + a2);
  } else {
    b1 = a1;
    b2 = a2;
  }

  const ComplexMatrix n1 = lift(excited_projector(), space, labels::kSite1);
  const ComplexMatrix n2 = lift(excited_projector(), space, labels::kSite2);
  const ComplexMatrix sp1 = lift(sigma_plus(), space, labels::kSite1);
  const ComplexMatrix sp2 = lift(sigma_plus(), space, labels::kSite2);
  const double eps1 = 0.5 * p.delta_e;
  const double eps2 = -0.5 * p.delta_e;

  ComplexMatrix h = eps1 * n1 + eps2 * n2;
  h += p.v * (sp1 * sp2.adjoint() + sp2 * sp1.adjoint());
  h += p.omega_vib * (b1.adjoint() * b1 + b2.adjoint() * b2);
  h += p.g * (n1 * (b1 + b1.adjoint()) + n2 * (b2 + b2.adjoint()));
  return {space, h};
}

ComplexMatrix excitation_number(const HilbertSpace& full_space) {
  return lift(excited_projector(), full_space, labels::kSite1) + lift(excited_projector(), full_space, labels::kSite2);
}

Operator build_effective_hamiltonian(const ModelParams& p, int n_trunc) {
  const HilbertSpace space{{labels::kDimer, 2}, {labels::kVib, n_trunc + 1}};
  const Ladder ladder = ladder_operators(n_trunc);
  const ComplexMatrix sz = lift(pauli_z(), space, labels::kDimer);
  const ComplexMatrix x = lift(ladder.annihilate + ladder.create, space, labels::kVib);
  ComplexMatrix h = lift(dimer_hamiltonian(p), space, labels::kDimer);
  h -= (p.g / std::numbers::sqrt2) * sz * x;
  h += p.omega_vib * lift(number_operator(n_trunc), space, labels::kVib);
  return {space, h};
}

ReductionReport reduce_to_effective(const ModelParams& p, int n_trunc) {
  const Operator full = build_full_hamiltonian(p, n_trunc, PhononModes::collective);
  const Eigen::Index d = n_trunc + 1;
  const Eigen::Index phonons = d * d;

  // Single-excitation block ordered (qubit, cm, rel); qubit 0 = site 1 excited.
  ComplexMatrix block(2 * phonons, 2 * phonons);
  const Eigen::Index offset[2] = {0 * 2 * phonons + 1 * phonons, 1 * 2 * phonons + 0 * phonons};
  for (int qa = 0; qa < 2; ++qa) {
    for (int qb = 0; qb < 2; ++qb) {
      block.block(qa * phonons, qb * phonons, phonons, phonons) =
          full.matrix.block(offset[qa], offset[qb], phonons, phonons);
    }
  }

  ReductionReport report;
  report.h_eff = build_effective_hamiltonian(p, n_trunc);
  const Ladder ladder = ladder_operators(n_trunc);
  const ComplexMatrix h_cm =
      p.omega_vib * number_operator(n_trunc) + (p.g / std::numbers::sqrt2) * (ladder.annihilate + ladder.create);

  const HilbertSpace eff_then_cm{{labels::kDimer, 2}, {labels::kRelative, d}, {labels::kCenterOfMass, d}};
  ComplexMatrix reference = kron(report.h_eff.matrix, identity(d)) + kron(identity(2 * d), h_cm);
  reference = permute_factors(reference, eff_then_cm, {labels::kDimer, labels::kCenterOfMass, labels::kRelative});

  const RealVector full_spectrum = eigvalsh(full.matrix);
  report.full_norm = full_spectrum.cwiseAbs().maxCoeff();
  const RealVector block_spectrum = eigvalsh(block);
  const RealVector reference_spectrum = eigvalsh(reference);
  report.spectral_deviation = (block_spectrum - reference_spectrum).cwiseAbs().maxCoeff();
  report.block_deviation = (block - reference).cwiseAbs().maxCoeff();

  const double limit = 1e-8 * report.full_norm;
  if (report.spectral_deviation > limit) throw ReductionMismatch(report.spectral_deviation, limit);
  return report;
}

DensityMatrix thermal_state(double omega, double temperature, int n_max, const std::string& label) {
  if (!(omega > 0.0)) throw ValidationError("omega", "thermal state needs a positive frequency");
  if (temperature < 0.0) throw ValidationError("temperature", "must be >= 0");
  if (n_max < 1) throw DimMismatch("thermal state truncation must be >= 1");
  RealVector weights = RealVector::Zero(n_max + 1);
  if (temperature == 0.0) {
    weights(0) = 1.0;
  } else {
    const double beta_omega = omega / (kBoltzmannCm * temperature);
    for (int n = 0; n <= n_max; ++n) weights(n) = std::exp(-beta_omega * n);
    weights /= weights.sum();
  }
  return DensityMatrix::trusted(HilbertSpace{{label, n_max + 1}}, weights.cast<Complex>().asDiagonal());
}

int required_bath_truncation(const ModelParams& p, double t_max_fs) {
  // Largest coherent displacement |alpha| = (g0/omega0) |1 - exp(-i omega0 t)| reached in the window.
  const double phase = 0.5 * kTwoPiC * p.omega0 * std::max(t_max_fs, 0.0);
  const double alpha = 2.0 * p.g0 / p.omega0 * std::sin(std::min(phase, std::numbers::pi / 2.0));
  const double mean = alpha * alpha;
  int n = static_cast<int>(std::ceil(mean + 8.0 * alpha + 8.0));
  if (p.bath_init == BathInit::thermal && p.temperature > 0.0) {
    // geometric tail of the thermal start below 1e-10
    const double x = std::exp(-p.omega0 / (kBoltzmannCm * p.temperature));
    n += static_cast<int>(std::ceil(std::log(1e-10) / std::log(x)));
  }
  return std::max(n, 5);
}

ModelParams with_resolved_bath(ModelParams p, double t_max_fs) {
  if (p.n_trunc_bath == 0) p.n_trunc_bath = required_bath_truncation(p, t_max_fs);
  return p;
}

DensityMatrix initial_state(const ModelParams& p, bool with_bath) {
  const ExcitonBasis basis = exciton_basis(p);
  const DensityMatrix dimer = DensityMatrix::trusted(HilbertSpace{{labels::kDimer, 2}}, projector(basis.x_plus));
  DensityMatrix rho = kron(dimer, thermal_state(p.omega_vib, p.temperature, p.n_trunc_vib, labels::kVib));
  if (!with_bath) return rho;
  require_bath_truncation(p);
  const double bath_temperature = p.bath_init == BathInit::thermal ? p.temperature : 0.0;
  return kron(rho, thermal_state(p.omega0, bath_temperature, p.n_trunc_bath, labels::kBath));
}

Operator build_total_hamiltonian(const ModelParams& p) {
  require_bath_truncation(p);
  const Operator h_eff = build_effective_hamiltonian(p, p.n_trunc_vib);
  const Eigen::Index bath_dim = p.n_trunc_bath + 1;
  const HilbertSpace space = h_eff.space * HilbertSpace{{labels::kBath, bath_dim}};
  const Ladder ladder = ladder_operators(p.n_trunc_bath);
  ComplexMatrix h = kron(h_eff.matrix, identity(bath_dim));
  h += p.omega0 * lift(number_operator(p.n_trunc_bath), space, labels::kBath);
  h += p.g0 * lift(pauli_z(), space, labels::kDimer) * lift(ladder.annihilate + ladder.create, space, labels::kBath);
  return {space, h};
}

}  // namespace vibcorr
