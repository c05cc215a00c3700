#pragma once

#include <string>
#include <vector>

#include "vibcorr/hilbert.hpp"

namespace vibcorr {

/// Split of a state's factors into two disjoint parties covering every factor.
struct Bipartition {
  std::vector<std::string> side_a;
  std::vector<std::string> side_b;

  // Throws UnknownLabel / DimMismatch unless the sides are disjoint and cover `space`.
  void validate(const HilbertSpace& space) const;
};

/// Rank-1 orthogonal qubit measurement along n = (sin t cos p, sin t sin p, cos t).
struct QubitProjector {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  // Unit vector of the + outcome: (cos(theta/2), e^{i phi} sin(theta/2)).
  ComplexVector plus_state() const;
  ComplexVector minus_state() const;
  // (1 + n.sigma)/2 and (1 - n.sigma)/2
  ComplexMatrix plus() const;
  ComplexMatrix minus() const;

  // Maps arbitrary angles onto the canonical ranges, keeping the same {Pi+, Pi-} pair.
  QubitProjector normalized() const;
};

/// Sum of |negative eigenvalues| of the partial transpose on `transpose_label`,
/// equal to (||rho^T||_1 - 1)/2.
double negativity(const DensityMatrix& rho, const std::string& transpose_label);

/// Realignment R(rho)_{(i k),(j l)} = rho_{(i j),(k l)} for i,k on side A and
/// j,l on side B. Result is dim(A)^2 x dim(B)^2.
ComplexMatrix realignment(const DensityMatrix& rho, const Bipartition& parts);

/// Lower bound on the entanglement of formation (ebits) for a 2 (x) d state:
/// L = max(||rho^{T_B}||_1, ||R(rho)||_1); 0 if L <= 1, otherwise
/// H2((1 + sqrt(1 - (L-1)^2)) / 2). One side must be two-dimensional.
double eof_lower_bound(const DensityMatrix& rho, const Bipartition& parts);

// S(rho_A) + S(rho_B) - S(rho), in bits.
double mutual_information(const DensityMatrix& rho, const Bipartition& parts);

struct DiscordOptions {
  int grid_n = 64;         // grid_n x grid_n points over (theta, phi)
  int refine_iters = 50;   // coordinate shrink-search passes from the best grid point
};

struct DiscordResult {
  double value = 0.0;                   // I - J, bits
  double mutual_information = 0.0;      // I
  double classical_correlation = 0.0;   // J after refinement
  double grid_classical_correlation = 0.0;  // J at the best grid point
  QubitProjector argmin;                // measurement attaining J
};

/// Quantum discord D_{A:B} with B = `measured_label` (a qubit factor) and A the
/// remaining factors, optimised over rank-1 orthogonal projectors on B.
/// Zero-probability outcomes (p < 1e-12) contribute nothing.
DiscordResult discord(const DensityMatrix& rho, const std::string& measured_label, const DiscordOptions& options = {});

// Conditional entropy S(A|{Pi_j}) in bits for one measurement; exposed for tests.
double conditional_entropy(const DensityMatrix& rho, const std::string& measured_label, const QubitProjector& measurement);

}  // namespace vibcorr
