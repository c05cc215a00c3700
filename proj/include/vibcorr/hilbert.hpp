#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "vibcorr/linalg.hpp"

namespace vibcorr {

struct Factor {
  std::string label;
  Eigen::Index dim = 0;

  bool operator==(const Factor&) const = default;
};

/// Ordered tensor product of labelled factors. Basis states are laid out
/// lexicographically with the first factor as the slowest index.
class HilbertSpace {
 public:
  HilbertSpace() = default;
  HilbertSpace(std::initializer_list<Factor> factors);
  explicit HilbertSpace(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  Eigen::Index dim() const { return dim_; }

  bool contains(const std::string& label) const;
  // Position of `label` in the factor list; throws UnknownLabel.
  std::size_t position(const std::string& label) const;
  Eigen::Index dim_of(const std::string& label) const;

  // Factors restricted to `labels`, kept in this space's order.
  HilbertSpace subspace(const std::vector<std::string>& labels) const;
  // Tensor product: factors of *this followed by those of `other`.
  HilbertSpace operator*(const HilbertSpace& other) const;

  bool operator==(const HilbertSpace&) const = default;

 private:
  std::vector<Factor> factors_;
  Eigen::Index dim_ = 1;
};

/// Square matrix bound to a HilbertSpace.
struct Operator {
  HilbertSpace space;
  ComplexMatrix matrix;

  Operator() = default;
  Operator(HilbertSpace s, ComplexMatrix m);

  Eigen::Index dim() const { return space.dim(); }
};

/// Hermitian, unit-trace, positive-semidefinite operator.
class DensityMatrix {
 public:
  // Validates: Hermitian within 1e-10, trace 1 within 1e-9, min eigenvalue >= -1e-9.
  DensityMatrix(HilbertSpace space, ComplexMatrix matrix);

  // Skips the spectral checks. For states produced from valid states by
  // trace- and positivity-preserving maps (unitary conjugation, partial trace).
  static DensityMatrix trusted(HilbertSpace space, ComplexMatrix matrix);

  const HilbertSpace& space() const { return space_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return space_.dim(); }

  double purity() const;
  Operator as_operator() const { return {space_, matrix_}; }

 private:
  DensityMatrix() = default;

  HilbertSpace space_;
  ComplexMatrix matrix_;
};

// Throws NotDensityMatrix when `m` fails the density-matrix tolerances.
void validate_density(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
Operator kron(const Operator& a, const Operator& b);
DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);

/// Embeds a single-factor operator into `space`, identity on every other factor.
/// Throws UnknownLabel or DimMismatch.
ComplexMatrix lift(const ComplexMatrix& op, const HilbertSpace& space, const std::string& target_label);

/// Reorders the tensor factors of a matrix on `space` into `order` (a permutation of its labels).
ComplexMatrix permute_factors(const ComplexMatrix& m, const HilbertSpace& space,
                              const std::vector<std::string>& order);

ComplexMatrix partial_trace(const ComplexMatrix& m, const HilbertSpace& space, const std::vector<std::string>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);

ComplexMatrix partial_transpose(const ComplexMatrix& m, const HilbertSpace& space, const std::string& target_label);
Operator partial_transpose(const DensityMatrix& rho, const std::string& target_label);

struct Ladder {
  ComplexMatrix annihilate;
  ComplexMatrix create;
};

/// Truncated bosonic ladder on Fock levels 0..n_max. Matrix elements that
/// would leave the truncated space are dropped.
Ladder ladder_operators(int n_max);
ComplexMatrix number_operator(int n_max);

ComplexMatrix identity(Eigen::Index dim);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// |v><v|
ComplexMatrix projector(const ComplexVector& v);

}  // namespace vibcorr
