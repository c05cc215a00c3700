#include "vibcorr/correlations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "vibcorr/errors.hpp"

namespace vibcorr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinOutcomeProbability = 1e-12;

// Measured-qubit blocks rho_{bb'} (each dim(A) x dim(A)) with B moved to the last factor.
struct QubitBlocks {
  ComplexMatrix b00;
  ComplexMatrix b01;
  ComplexMatrix b11;
  ComplexMatrix reduced_a;  // b00 + b11
};

std::vector<std::string> labels_without(const HilbertSpace& space, const std::string& excluded) {
  std::vector<std::string> out;
  for (const auto& f : space.factors()) {
    if (f.label != excluded) out.push_back(f.label);
  }
  return out;
}

QubitBlocks split_measured_qubit(const DensityMatrix& rho, const std::string& measured_label) {
  if (rho.space().dim_of(measured_label) != 2) {
    throw DimMismatch("discord measurement factor '" + measured_label + "' must be a qubit");
  }
  if (rho.space().size() < 2) throw DimMismatch("discord needs at least two factors");
  std::vector<std::string> order = labels_without(rho.space(), measured_label);
  order.push_back(measured_label);
  const ComplexMatrix m = permute_factors(rho.matrix(), rho.space(), order);
  const Eigen::Index da = m.rows() / 2;
  QubitBlocks blocks;
  blocks.b00 = m(Eigen::seqN(0, da, 2), Eigen::seqN(0, da, 2));
  blocks.b01 = m(Eigen::seqN(0, da, 2), Eigen::seqN(1, da, 2));
  blocks.b11 = m(Eigen::seqN(1, da, 2), Eigen::seqN(1, da, 2));
  blocks.reduced_a = blocks.b00 + blocks.b11;
  return blocks;
}

// sum_j p_j S(rho_{A|j}) for the projector pair defined by (theta, phi).
double conditional_entropy_of(const QubitBlocks& blocks, double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const Complex cross = c * s * std::polar(1.0, phi);
  ComplexMatrix plus = c * c * blocks.b00 + s * s * blocks.b11;
  plus += cross * blocks.b01;
  plus += (cross * blocks.b01).adjoint();
  const ComplexMatrix minus = blocks.reduced_a - plus;

  double total = 0.0;
  for (const ComplexMatrix* branch : std::array<const ComplexMatrix*, 2>{&plus, &minus}) {
    const double p = branch->trace().real();
    if (p < kMinOutcomeProbability) continue;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(*branch, Eigen::EigenvaluesOnly);
    const RealVector spectrum = solver.eigenvalues() / p;
    total += p * entropy_bits(spectrum);
  }
  return total;
}

void require_factor_set(const HilbertSpace& space, const std::vector<std::string>& side, const char* name) {
  if (side.empty()) throw DimMismatch(std::string("bipartition side ") + name + " is empty");
  for (const auto& l : side) space.position(l);
}

Eigen::Index side_dim(const HilbertSpace& space, const std::vector<std::string>& side) {
  Eigen::Index d = 1;
  for (const auto& l : side) d *= space.dim_of(l);
  return d;
}

double checked_entropy(const ComplexMatrix& m) { return von_neumann_entropy(m); }

}  // namespace

void Bipartition::validate(const HilbertSpace& space) const {
  require_factor_set(space, side_a, "A");
  require_factor_set(space, side_b, "B");
  std::set<std::string> all(side_a.begin(), side_a.end());
  for (const auto& l : side_b) {
    if (!all.insert(l).second) throw DimMismatch("label '" + l + "' appears on both sides of the bipartition");
  }
  if (all.size() != side_a.size() + side_b.size()) throw DimMismatch("duplicate label in bipartition");
  if (all.size() != space.size()) throw DimMismatch("bipartition must cover every factor of the state");
}

ComplexVector QubitProjector::plus_state() const {
  ComplexVector v(2);
  v << std::cos(0.5 * theta), std::polar(std::sin(0.5 * theta), phi);
  return v;
}

ComplexVector QubitProjector::minus_state() const {
  ComplexVector v(2);
  v << std::sin(0.5 * theta), -std::polar(std::cos(0.5 * theta), phi);
  return v;
}

ComplexMatrix QubitProjector::plus() const { return projector(plus_state()); }
ComplexMatrix QubitProjector::minus() const { return projector(minus_state()); }

QubitProjector QubitProjector::normalized() const {
  // Bloch direction is 4pi-periodic in theta/2 but only the axis matters; fold theta into [0, pi].
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  double p = phi;
  if (t > kPi) {
    t = 2.0 * kPi - t;
    p += kPi;
  }
  p = std::fmod(p, 2.0 * kPi);
  if (p < 0.0) p += 2.0 * kPi;
  return {t, p};
}

double negativity(const DensityMatrix& rho, const std::string& transpose_label) {
  const ComplexMatrix pt = partial_transpose(rho.matrix(), rho.space(), transpose_label);
  const RealVector spectrum = eigvalsh(pt);
  double total = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    if (spectrum(i) < 0.0) total -= spectrum(i);
  }
  return total;
}

ComplexMatrix realignment(const DensityMatrix& rho, const Bipartition& parts) {
  parts.validate(rho.space());
  std::vector<std::string> order = parts.side_a;
  order.insert(order.end(), parts.side_b.begin(), parts.side_b.end());
  const ComplexMatrix m = permute_factors(rho.matrix(), rho.space(), order);
  const Eigen::Index da = side_dim(rho.space(), parts.side_a);
  const Eigen::Index db = side_dim(rho.space(), parts.side_b);
  ComplexMatrix out(da * da, db * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index k = 0; k < da; ++k) {
      for (Eigen::Index j = 0; j < db; ++j) {
        for (Eigen::Index l = 0; l < db; ++l) {
          out(i * da + k, j * db + l) = m(i * db + j, k * db + l);
        }
      }
    }
  }
  return out;
}

double eof_lower_bound(const DensityMatrix& rho, const Bipartition& parts) {
  parts.validate(rho.space());
  const Eigen::Index da = side_dim(rho.space(), parts.side_a);
  const Eigen::Index db = side_dim(rho.space(), parts.side_b);
  if (da != 2 && db != 2) throw DimMismatch("entanglement-of-formation bound needs a 2 x d bipartition");

  ComplexMatrix pt = rho.matrix();
  for (const auto& label : parts.side_b) pt = partial_transpose(pt, rho.space(), label);
  const double lambda = std::max(trace_norm(pt), trace_norm(realignment(rho, parts)));
  if (lambda <= 1.0) return 0.0;
  const double excess = std::min(lambda - 1.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - excess * excess)));
}

double mutual_information(const DensityMatrix& rho, const Bipartition& parts) {
  parts.validate(rho.space());
  const double s_a = checked_entropy(partial_trace(rho.matrix(), rho.space(), parts.side_a));
  const double s_b = checked_entropy(partial_trace(rho.matrix(), rho.space(), parts.side_b));
  return std::max(0.0, s_a + s_b - checked_entropy(rho.matrix()));
}

double conditional_entropy(const DensityMatrix& rho, const std::string& measured_label,
                           const QubitProjector& measurement) {
  return conditional_entropy_of(split_measured_qubit(rho, measured_label), measurement.theta, measurement.phi);
}

DiscordResult discord(const DensityMatrix& rho, const std::string& measured_label, const DiscordOptions& options) {
  if (options.grid_n < 2) throw DimMismatch("discord grid_n must be >= 2");
  if (options.refine_iters < 0) throw DimMismatch("discord refine_iters must be >= 0");
  const QubitBlocks blocks = split_measured_qubit(rho, measured_label);
  const Bipartition parts{labels_without(rho.space(), measured_label), {measured_label}};

  DiscordResult result;
  result.mutual_information = mutual_information(rho, parts);
  const double s_a = checked_entropy(blocks.reduced_a);

  const int n = options.grid_n;
  const double theta_step = kPi / (n - 1);
  const double phi_step = 2.0 * kPi / n;
  double best = std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  double best_phi = 0.0;
  // Lexicographic scan with strict improvement: ties keep the lowest (theta, phi).
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double theta = i * theta_step;
      const double phi = j * phi_step;
      const double value = conditional_entropy_of(blocks, theta, phi);
      if (value < best) {
        best = value;
        best_theta = theta;
        best_phi = phi;
      }
    }
  }
  result.grid_classical_correlation = s_a - best;

  double step_theta = theta_step;
  double step_phi = phi_step;
  for (int pass = 0; pass < options.refine_iters; ++pass) {
    const double candidates[4][2] = {{best_theta + step_theta, best_phi},
                                     {best_theta - step_theta, best_phi},
                                     {best_theta, best_phi + step_phi},
                                     {best_theta, best_phi - step_phi}};
    bool moved = false;
    for (const auto& c : candidates) {
      const double value = conditional_entropy_of(blocks, c[0], c[1]);
      if (value < best) {
        best = value;
        best_theta = c[0];
        best_phi = c[1];
        moved = true;
      }
    }
    if (!moved) {
      step_theta *= 0.5;
      step_phi *= 0.5;
    }
  }

  result.classical_correlation = s_a - best;
  result.value = result.mutual_information - result.classical_correlation;
  result.argmin = QubitProjector{best_theta, best_phi}.normalized();
  return result;
}

}  // namespace vibcorr
