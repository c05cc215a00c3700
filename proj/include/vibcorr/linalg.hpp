#pragma once

#include <complex>
#include <span>

#include <Eigen/Dense>

namespace vibcorr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// 2*pi*c in rad / (fs * cm^-1): converts a wavenumber into an angular frequency.
inline constexpr double kTwoPiC = 1.8836515673088532e-4;
// Boltzmann constant in cm^-1 / K.
inline constexpr double kBoltzmannCm = 0.6950348;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kNegativeEigTol = 1e-9;
inline constexpr double kEigenvalueClamp = 1e-14;

/// Eigen-decomposition of a Hermitian matrix: `vectors * diag(values) * vectors^H`.
/// Eigenvalues ascend; eigenvectors are the columns of a unitary matrix.
struct SpectralDecomposition {
  RealVector values;
  ComplexMatrix vectors;

  Eigen::Index dim() const { return values.size(); }
  ComplexMatrix reconstruct() const;
};

// Largest entrywise |m - m^H|.
double hermiticity_defect(const ComplexMatrix& m);

// Throws InvalidMatrix for non-square input or non-finite entries.
void require_square_finite(const ComplexMatrix& m);

/// Hermitian eigensolver.
///
/// Throws NotHermitian when max|m - m^H| > 1e-10 and NoConvergence when the
/// underlying iteration fails. Real symmetric input takes a faster real path.
SpectralDecomposition eigh(const ComplexMatrix& m);

// Eigenvalues only (ascending); same preconditions as eigh.
RealVector eigvalsh(const ComplexMatrix& m);

/// Sum of singular values. Hermitian input uses |eigenvalues|; anything else
/// (including rectangular matrices) goes through an SVD.
double trace_norm(const ComplexMatrix& m);

/// von Neumann entropy in bits of a density matrix given as a raw matrix.
/// Throws NotDensityMatrix for non-Hermitian input, |tr - 1| > 1e-9, or an
/// eigenvalue below -1e-9.
double von_neumann_entropy(const ComplexMatrix& rho);

// -sum p log2 p over a spectrum; entries below 1e-14 count as zero. No validation.
double entropy_bits(std::span<const double> spectrum);
double entropy_bits(const RealVector& spectrum);

// Binary entropy H2(x) in bits, 0 at the endpoints.
double binary_entropy(double x);

/// exp(-i * unit_scale * H * t) built from the spectral decomposition of H.
/// `unit_scale` converts (energy unit * time unit) to radians; kTwoPiC for cm^-1 and fs.
ComplexMatrix evolution_operator(const SpectralDecomposition& dec, double t, double unit_scale = kTwoPiC);

}  // namespace vibcorr
