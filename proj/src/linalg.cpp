#include "vibcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vibcorr/errors.hpp"

namespace vibcorr {

namespace {

bool is_real(const ComplexMatrix& m) { return m.imag().cwiseAbs().maxCoeff() == 0.0; }

void require_hermitian(const ComplexMatrix& m) {
  require_square_finite(m);
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol) {
    throw NotHermitian("matrix is not Hermitian: max |m - m^H| = " + std::to_string(defect));
  }
}

}  // namespace

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

void require_square_finite(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InvalidMatrix("expected a non-empty square matrix, got " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()));
  }
  if (!m.allFinite()) throw InvalidMatrix("matrix has non-finite entries");
}

SpectralDecomposition eigh(const ComplexMatrix& m) {
  require_hermitian(m);
  SpectralDecomposition dec;
  if (is_real(m)) {
    const Eigen::MatrixXd sym = 0.5 * (m.real() + m.real().transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) throw NoConvergence("real symmetric eigensolver did not converge");
    dec.values = solver.eigenvalues();
    dec.vectors = solver.eigenvectors().cast<Complex>();
  } else {
    const ComplexMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
    if (solver.info() != Eigen::Success) throw NoConvergence("Hermitian eigensolver did not converge");
    dec.values = solver.eigenvalues();
    dec.vectors = solver.eigenvectors();
  }
  return dec;
}

RealVector eigvalsh(const ComplexMatrix& m) {
  require_hermitian(m);
  if (is_real(m)) {
    const Eigen::MatrixXd sym = 0.5 * (m.real() + m.real().transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NoConvergence("real symmetric eigensolver did not converge");
    return solver.eigenvalues();
  }
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NoConvergence("Hermitian eigensolver did not converge");
  return solver.eigenvalues();
}

double trace_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (!m.allFinite()) throw InvalidMatrix("matrix has non-finite entries");
  if (m.rows() == m.cols() && hermiticity_defect(m) <= kHermitianTol) {
    return eigvalsh(m).cwiseAbs().sum();
  }
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

double entropy_bits(std::span<const double> spectrum) {
  double s = 0.0;
  for (double p : spectrum) {
    if (p > kEigenvalueClamp) s -= p * std::log2(p);
  }
  return s;
}

double entropy_bits(const RealVector& spectrum) {
  return entropy_bits(std::span<const double>(spectrum.data(), static_cast<std::size_t>(spectrum.size())));
}

double binary_entropy(double x) {
  x = std::clamp(x, 0.0, 1.0);
  const double values[2] = {x, 1.0 - x};
  return entropy_bits(std::span<const double>(values, 2));
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  require_square_finite(rho);
  const double defect = hermiticity_defect(rho);
  if (defect > kHermitianTol) {
    throw NotDensityMatrix("state is not Hermitian: defect " + std::to_string(defect));
  }
  const double trace = rho.trace().real();
  if (std::abs(trace - 1.0) > kTraceTol) {
    throw NotDensityMatrix("state trace " + std::to_string(trace) + " differs from 1");
  }
  const RealVector spectrum = eigvalsh(rho);
  if (spectrum.minCoeff() < -kNegativeEigTol) {
    throw NotDensityMatrix("state has eigenvalue " + std::to_string(spectrum.minCoeff()));
  }
  return entropy_bits(spectrum);
}

ComplexMatrix evolution_operator(const SpectralDecomposition& dec, double t, double unit_scale) {
  ComplexVector phases(dec.dim());
  for (Eigen::Index i = 0; i < dec.dim(); ++i) {
    phases(i) = std::polar(1.0, -unit_scale * dec.values(i) * t);
  }
  return dec.vectors * phases.asDiagonal() * dec.vectors.adjoint();
}

}  // namespace vibcorr
