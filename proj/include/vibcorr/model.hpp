#pragma once

#include <string>

#include "vibcorr/hilbert.hpp"

namespace vibcorr {

// Factor labels used by the model builders.
namespace labels {
inline const std::string kDimer = "dimer";
inline const std::string kVib = "vib";
inline const std::string kBath = "bath";
inline const std::string kSite1 = "site1";
inline const std::string kSite2 = "site2";
inline const std::string kMode1 = "mode1";
inline const std::string kMode2 = "mode2";
inline const std::string kCenterOfMass = "cm";
inline const std::string kRelative = "rel";
}  // namespace labels

enum class BathInit { vacuum, thermal };

std::string to_string(BathInit b);
BathInit bath_init_from_string(const std::string& s);

/// Physical parameters; energies in cm^-1, temperature in K.
/// Defaults are the PE545 dimer values with a resonant 1111 cm^-1 mode at 270 K.
struct ModelParams {
  double delta_e = 1042.0;  // eps1 - eps2
  double v = 92.0;
  double omega_vib = 1111.0;
  double g = 267.1;
  double temperature = 270.0;
  int n_trunc_vib = 5;
  double omega0 = 11.11;
  double g0 = 0.0;
  // 0 selects a truncation sized from the expected bath displacement (see required_bath_truncation).
  int n_trunc_bath = 0;
  BathInit bath_init = BathInit::vacuum;

  // Throws ValidationError naming the offending field.
  void validate() const;
};

struct ExcitonBasis {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  ComplexVector x_plus;
  ComplexVector x_minus;
  double mixing_angle = 0.0;  // atan2(2V, delta_e)
};

/// Eigenpairs of (delta_e/2) sigma_z + V sigma_x. Throws DegenerateDimer when delta_e = V = 0.
ExcitonBasis exciton_basis(const ModelParams& p);

// (delta_e/2) sigma_z + V sigma_x on the single-excitation dimer qubit.
ComplexMatrix dimer_hamiltonian(const ModelParams& p);

enum class PhononModes {
  site,        // b1, b2 truncated individually; factors site1, site2, mode1, mode2
  collective,  // b+, b- truncated individually; factors site1, site2, cm, rel
};

/// Dimer + two local vibrations on the full four-factor space.
///
/// Chromophore basis: index 0 = excited, index 1 = ground, with eps1 = delta_e/2
/// and eps2 = -delta_e/2. With PhononModes::collective the local modes are
/// expressed through truncated collective modes, b1 = (b+ - b-)/sqrt2 and
/// b2 = (b+ + b-)/sqrt2, which makes the single-excitation reduction exact at
/// any truncation.
Operator build_full_hamiltonian(const ModelParams& p, int n_trunc, PhononModes modes = PhononModes::site);

// Electronic excitation number sigma1+ sigma1- + sigma2+ sigma2- on a full-model space.
ComplexMatrix excitation_number(const HilbertSpace& full_space);

/// Effective exciton-vibration Hamiltonian on dimer (x) vib:
/// (delta_e/2) sz + V sx - (g/sqrt2) sz (b + b^dag) + omega_vib b^dag b.
Operator build_effective_hamiltonian(const ModelParams& p, int n_trunc);

struct ReductionReport {
  Operator h_eff;
  // Sorted-spectrum max deviation between the single-excitation block of the full
  // Hamiltonian and H_eff (x) 1 + 1 (x) h_cm.
  double spectral_deviation = 0.0;
  // Entrywise max deviation between the same two matrices.
  double block_deviation = 0.0;
  // Spectral norm of the full Hamiltonian.
  double full_norm = 0.0;
};

/// Builds H_eff and checks it against the single-excitation block of the full
/// collective-mode Hamiltonian. The centre-of-mass mode carries the constant
/// drive (g/sqrt2)(b+ + b+^dag), so h_cm = omega_vib n+ + (g/sqrt2)(b+ + b+^dag).
/// Throws ReductionMismatch when the spectral deviation exceeds 1e-8 * full_norm.
ReductionReport reduce_to_effective(const ModelParams& p, int n_trunc);

/// Diagonal Gibbs state of a truncated oscillator, p_n proportional to exp(-n omega / kT).
/// T = 0 gives the vacuum projector. Single factor labelled `label`.
DensityMatrix thermal_state(double omega, double temperature, int n_max, const std::string& label = labels::kVib);

// Fock-space truncation for the low-frequency mode used when params.n_trunc_bath == 0.
// Sized so the coherent displacement driven by g0 over [0, t_max_fs] (plus thermal
// occupation for thermal starts) stays well inside the truncated space.
int required_bath_truncation(const ModelParams& p, double t_max_fs);

// Copy of `p` with n_trunc_bath resolved (unchanged when already set).
ModelParams with_resolved_bath(ModelParams p, double t_max_fs);

/// |X+><X+| (x) rho_th(omega_vib), optionally (x) the bath-mode start state
/// (vacuum or rho_th(omega0) per bath_init). with_bath requires n_trunc_bath >= 1.
DensityMatrix initial_state(const ModelParams& p, bool with_bath = false);

/// H_eff (x) 1 + omega0 n_bath + g0 sz (b0 + b0^dag) on dimer (x) vib (x) bath.
/// Requires n_trunc_bath >= 1.
Operator build_total_hamiltonian(const ModelParams& p);

}  // namespace vibcorr
