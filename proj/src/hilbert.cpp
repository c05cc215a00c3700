#include "vibcorr/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "vibcorr/errors.hpp"

namespace vibcorr {

namespace {

// Row-major strides: stride[k] is the index step of factor k.
std::vector<Eigen::Index> strides_of(const HilbertSpace& space) {
  const auto& f = space.factors();
  std::vector<Eigen::Index> strides(f.size(), 1);
  for (std::size_t k = f.size(); k-- > 1;) strides[k - 1] = strides[k] * f[k].dim;
  return strides;
}

void require_dim(const ComplexMatrix& m, const HilbertSpace& space) {
  if (m.rows() != space.dim() || m.cols() != space.dim()) {
    throw DimMismatch("matrix of size " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                      " does not match space dimension " + std::to_string(space.dim()));
  }
}

// For each full basis index, its offset inside the kept factors and inside the traced factors.
struct IndexSplit {
  std::vector<Eigen::Index> kept;
  std::vector<Eigen::Index> traced;
  Eigen::Index kept_dim = 1;
  Eigen::Index traced_dim = 1;
};

IndexSplit split_indices(const HilbertSpace& space, const std::vector<bool>& keep_mask) {
  const auto& f = space.factors();
  IndexSplit split;
  split.kept.resize(static_cast<std::size_t>(space.dim()));
  split.traced.resize(static_cast<std::size_t>(space.dim()));
  for (std::size_t k = 0; k < f.size(); ++k) (keep_mask[k] ? split.kept_dim : split.traced_dim) *= f[k].dim;

  std::vector<Eigen::Index> digits(f.size(), 0);
  for (Eigen::Index i = 0; i < space.dim(); ++i) {
    Eigen::Index kept = 0;
    Eigen::Index traced = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (keep_mask[k]) {
        kept = kept * f[k].dim + digits[k];
      } else {
        traced = traced * f[k].dim + digits[k];
      }
    }
    split.kept[static_cast<std::size_t>(i)] = kept;
    split.traced[static_cast<std::size_t>(i)] = traced;
    for (std::size_t k = f.size(); k-- > 0;) {
      if (++digits[k] < f[k].dim) break;
      digits[k] = 0;
    }
  }
  return split;
}

}  // namespace

HilbertSpace::HilbertSpace(std::initializer_list<Factor> factors) : HilbertSpace(std::vector<Factor>(factors)) {}

HilbertSpace::HilbertSpace(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.dim < 1) throw DimMismatch("factor '" + f.label + "' must have positive dimension");
    if (!seen.insert(f.label).second) throw DimMismatch("duplicate factor label '" + f.label + "'");
    dim_ *= f.dim;
  }
}

bool HilbertSpace::contains(const std::string& label) const {
  return std::any_of(factors_.begin(), factors_.end(), [&](const Factor& f) { return f.label == label; });
}

std::size_t HilbertSpace::position(const std::string& label) const {
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (factors_[k].label == label) return k;
  }
  throw UnknownLabel(label);
}

Eigen::Index HilbertSpace::dim_of(const std::string& label) const { return factors_[position(label)].dim; }

HilbertSpace HilbertSpace::subspace(const std::vector<std::string>& labels) const {
  for (const auto& l : labels) position(l);
  std::vector<Factor> kept;
  for (const auto& f : factors_) {
    if (std::find(labels.begin(), labels.end(), f.label) != labels.end()) kept.push_back(f);
  }
  return HilbertSpace(std::move(kept));
}

HilbertSpace HilbertSpace::operator*(const HilbertSpace& other) const {
  std::vector<Factor> all = factors_;
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return HilbertSpace(std::move(all));
}

Operator::Operator(HilbertSpace s, ComplexMatrix m) : space(std::move(s)), matrix(std::move(m)) {
  require_dim(matrix, space);
}

void validate_density(const ComplexMatrix& m) {
  require_square_finite(m);
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol) throw NotDensityMatrix("not Hermitian: defect " + std::to_string(defect));
  const double trace = m.trace().real();
  if (std::abs(trace - 1.0) > kTraceTol) throw NotDensityMatrix("trace " + std::to_string(trace) + " != 1");
  const double min_eig = eigvalsh(m).minCoeff();
  if (min_eig < -kNegativeEigTol) throw NotDensityMatrix("negative eigenvalue " + std::to_string(min_eig));
}

DensityMatrix::DensityMatrix(HilbertSpace space, ComplexMatrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  require_dim(matrix_, space_);
  validate_density(matrix_);
}

DensityMatrix DensityMatrix::trusted(HilbertSpace space, ComplexMatrix matrix) {
  require_dim(matrix, space);
  DensityMatrix rho;
  rho.space_ = std::move(space);
  rho.matrix_ = std::move(matrix);
  return rho;
}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Operator kron(const Operator& a, const Operator& b) { return {a.space * b.space, kron(a.matrix, b.matrix)}; }

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::trusted(a.space() * b.space(), kron(a.matrix(), b.matrix()));
}

ComplexMatrix lift(const ComplexMatrix& op, const HilbertSpace& space, const std::string& target_label) {
  const std::size_t pos = space.position(target_label);
  const auto& f = space.factors();
  if (op.rows() != f[pos].dim || op.cols() != f[pos].dim) {
    throw DimMismatch("operator of size " + std::to_string(op.rows()) + " cannot act on factor '" + target_label +
                      "' of dimension " + std::to_string(f[pos].dim));
  }
  Eigen::Index before = 1;
  Eigen::Index after = 1;
  for (std::size_t k = 0; k < pos; ++k) before *= f[k].dim;
  for (std::size_t k = pos + 1; k < f.size(); ++k) after *= f[k].dim;
  return kron(kron(identity(before), op), identity(after));
}

ComplexMatrix permute_factors(const ComplexMatrix& m, const HilbertSpace& space,
                              const std::vector<std::string>& order) {
  require_dim(m, space);
  if (order.size() != space.size()) throw DimMismatch("factor order must list every label exactly once");
  std::vector<std::size_t> source(order.size());
  std::vector<Factor> reordered;
  for (std::size_t k = 0; k < order.size(); ++k) {
    source[k] = space.position(order[k]);
    reordered.push_back(space.factors()[source[k]]);
  }
  const HilbertSpace target(std::move(reordered));  // rejects duplicates
  const auto old_strides = strides_of(space);

  // new index -> old index
  std::vector<Eigen::Index> map(static_cast<std::size_t>(space.dim()));
  std::vector<Eigen::Index> digits(order.size(), 0);
  const auto& tf = target.factors();
  for (Eigen::Index i = 0; i < target.dim(); ++i) {
    Eigen::Index old = 0;
    for (std::size_t k = 0; k < order.size(); ++k) old += digits[k] * old_strides[source[k]];
    map[static_cast<std::size_t>(i)] = old;
    for (std::size_t k = order.size(); k-- > 0;) {
      if (++digits[k] < tf[k].dim) break;
      digits[k] = 0;
    }
  }
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out(i, j) = m(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const HilbertSpace& space, const std::vector<std::string>& keep) {
  require_dim(m, space);
  if (keep.empty()) throw DimMismatch("partial trace must keep at least one factor");
  std::vector<bool> mask(space.size(), false);
  for (const auto& l : keep) mask[space.position(l)] = true;
  const IndexSplit split = split_indices(space, mask);

  // full index for each (kept, traced) pair
  std::vector<Eigen::Index> full(static_cast<std::size_t>(space.dim()));
  for (Eigen::Index i = 0; i < space.dim(); ++i) {
    const auto s = static_cast<std::size_t>(i);
    full[static_cast<std::size_t>(split.kept[s] * split.traced_dim + split.traced[s])] = i;
  }
  ComplexMatrix out = ComplexMatrix::Zero(split.kept_dim, split.kept_dim);
  for (Eigen::Index b = 0; b < split.kept_dim; ++b) {
    for (Eigen::Index a = 0; a < split.kept_dim; ++a) {
      Complex acc = 0.0;
      for (Eigen::Index t = 0; t < split.traced_dim; ++t) {
        acc += m(full[static_cast<std::size_t>(a * split.traced_dim + t)],
                 full[static_cast<std::size_t>(b * split.traced_dim + t)]);
      }
      out(a, b) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  return DensityMatrix::trusted(rho.space().subspace(keep), partial_trace(rho.matrix(), rho.space(), keep));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const HilbertSpace& space, const std::string& target_label) {
  require_dim(m, space);
  const std::size_t pos = space.position(target_label);
  const Eigen::Index stride = strides_of(space)[pos];
  const Eigen::Index d = space.factors()[pos].dim;
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const Eigen::Index dj = (j / stride) % d;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Eigen::Index di = (i / stride) % d;
      // swap the target digits of row and column
      out(i + (dj - di) * stride, j + (di - dj) * stride) = m(i, j);
    }
  }
  return out;
}

Operator partial_transpose(const DensityMatrix& rho, const std::string& target_label) {
  return {rho.space(), partial_transpose(rho.matrix(), rho.space(), target_label)};
}

Ladder ladder_operators(int n_max) {
  if (n_max < 1) throw DimMismatch("ladder truncation n_max must be >= 1");
  const Eigen::Index dim = n_max + 1;
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  ComplexMatrix adag = a.adjoint();
  return {std::move(a), std::move(adag)};
}

ComplexMatrix number_operator(int n_max) {
  if (n_max < 1) throw DimMismatch("number operator truncation n_max must be >= 1");
  RealVector levels = RealVector::LinSpaced(n_max + 1, 0.0, static_cast<double>(n_max));
  return levels.cast<Complex>().asDiagonal();
}

ComplexMatrix identity(Eigen::Index dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace vibcorr
