#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support/oracles.hpp"
#include "vibcorr/correlations.hpp"
#include "vibcorr/errors.hpp"

using namespace vibcorr;
using vibcorr::testing::Random;

namespace {

const HilbertSpace kQubits{{"a", 2}, {"b", 2}};
const Bipartition kAB{{"a"}, {"b"}};

double log2_or_zero(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// (1 + sum_i c_i sigma_i (x) sigma_i)/4
DensityMatrix bell_diagonal(double c1, double c2, double c3) {
  const ComplexMatrix m = 0.25 * (identity(4) + c1 * kron(pauli_x(), pauli_x()) + c2 * kron(pauli_y(), pauli_y()) +
                                  c3 * kron(pauli_z(), pauli_z()));
  return DensityMatrix(kQubits, m);
}

// Closed form for Bell-diagonal states: I from the four Bell weights, the
// classical part from the largest |c_i|.
double bell_diagonal_discord(double c1, double c2, double c3) {
  const double w[4] = {(1 - c1 - c2 - c3) / 4, (1 - c1 + c2 + c3) / 4, (1 + c1 - c2 + c3) / 4, (1 + c1 + c2 - c3) / 4};
  double mutual = 2.0;
  for (double x : w) mutual += log2_or_zero(x);
  const double c = std::max({std::abs(c1), std::abs(c2), std::abs(c3)});
  const double classical = 0.5 * (log2_or_zero(1 - c) + log2_or_zero(1 + c));
  return mutual - classical;
}

DensityMatrix pure(const HilbertSpace& s, const ComplexVector& psi) { return DensityMatrix(s, psi * psi.adjoint()); }

}  // namespace

TEST_CASE("Bipartition validation") {
  const HilbertSpace s{{"q", 2}, {"vib", 3}, {"bath", 2}};
  CHECK_NOTHROW((Bipartition{{"q"}, {"vib", "bath"}}.validate(s)));
  CHECK_THROWS_AS((Bipartition{{"q"}, {"vib"}}.validate(s)), DimMismatch);
  CHECK_THROWS_AS((Bipartition{{"q"}, {"q", "vib", "bath"}}.validate(s)), DimMismatch);
  CHECK_THROWS_AS((Bipartition{{}, {"q", "vib", "bath"}}.validate(s)), DimMismatch);
  CHECK_THROWS_AS((Bipartition{{"x"}, {"q", "vib", "bath"}}.validate(s)), UnknownLabel);
}

TEST_CASE("QubitProjector") {
  for (double theta : {0.0, 0.4, std::numbers::pi / 2, 2.9}) {
    for (double phi : {0.0, 1.3, 5.5}) {
      const QubitProjector q{theta, phi};
      CHECK((q.plus() + q.minus() - identity(2)).cwiseAbs().maxCoeff() < 1e-15);
      CHECK((q.plus() * q.plus() - q.plus()).cwiseAbs().maxCoeff() < 1e-15);
      CHECK(std::abs(q.plus_state().dot(q.minus_state())) < 1e-15);
      const ComplexMatrix n_sigma = std::sin(theta) * std::cos(phi) * pauli_x() +
                                    std::sin(theta) * std::sin(phi) * pauli_y() + std::cos(theta) * pauli_z();
      CHECK((q.plus() - 0.5 * (identity(2) + n_sigma)).cwiseAbs().maxCoeff() < 1e-15);
    }
  }
  const QubitProjector wrapped{-0.5, 7.0};
  const QubitProjector canonical = wrapped.normalized();
  CHECK(canonical.theta >= 0.0);
  CHECK(canonical.theta <= std::numbers::pi);
  CHECK(canonical.phi >= 0.0);
  CHECK(canonical.phi < 2 * std::numbers::pi);
  CHECK((canonical.plus() - wrapped.plus()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("negativity") {
  CHECK(negativity(vibcorr::testing::bell_state(), "a") == doctest::Approx(0.5));
  CHECK(negativity(vibcorr::testing::bell_state(), "b") == doctest::Approx(0.5));
  SUBCASE("Werner family") {
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.9}) {
      const DensityMatrix w(kQubits, p * vibcorr::testing::bell_state().matrix() + (1 - p) * 0.25 * identity(4));
      CHECK(negativity(w, "b") == doctest::Approx(std::max(0.0, (3 * p - 1) / 4)).epsilon(1e-12));
    }
  }
  SUBCASE("pure states against Schmidt weights") {
    Random rng;
    const HilbertSpace s{{"q", 2}, {"vib", 6}};
    for (int k = 0; k < 25; ++k) {
      const ComplexVector psi = rng.unit_vector(12);
      const auto w = vibcorr::testing::schmidt_weights(psi, 2);
      const double sum_sqrt = std::sqrt(w[0]) + std::sqrt(w[1]);
      CHECK(negativity(pure(s, psi), "q") == doctest::Approx((sum_sqrt * sum_sqrt - 1) / 2).epsilon(1e-10));
    }
  }
  SUBCASE("separable states") {
    Random rng;
    const HilbertSpace s{{"q", 2}, {"vib", 3}};
    for (int k = 0; k < 25; ++k) {
      const DensityMatrix rho(s, rng.separable(2, 3, 4));
      CHECK(negativity(rho, "q") <= 1e-12);
    }
  }
}

TEST_CASE("realignment") {
  const ComplexMatrix r = realignment(vibcorr::testing::bell_state(), kAB);
  CHECK(r.rows() == 4);
  CHECK(r.cols() == 4);
  CHECK(trace_norm(r) == doctest::Approx(2.0));

  Random rng;
  const HilbertSpace s{{"q", 2}, {"vib", 3}};
  const ComplexMatrix ra = rng.density(2);
  const ComplexMatrix rb = rng.density(3);
  const ComplexMatrix rp = realignment(DensityMatrix(s, kron(ra, rb)), {{"q"}, {"vib"}});
  CHECK(rp.rows() == 4);
  CHECK(rp.cols() == 9);
  // R(rhoA (x) rhoB) = vec(rhoA) vec(rhoB)^T has a single singular value.
  CHECK(trace_norm(rp) == doctest::Approx(ra.norm() * rb.norm()).epsilon(1e-12));
}

TEST_CASE("EoF lower bound") {
  CHECK(eof_lower_bound(vibcorr::testing::bell_state(), kAB) == doctest::Approx(1.0));
  SUBCASE("exact on pure states") {
    Random rng;
    const HilbertSpace s{{"q", 2}, {"vib", 4}};
    for (int k = 0; k < 25; ++k) {
      const ComplexVector psi = rng.unit_vector(8);
      const double entanglement = vibcorr::testing::entropy_from_weights(vibcorr::testing::schmidt_weights(psi, 2));
      CHECK(eof_lower_bound(pure(s, psi), {{"q"}, {"vib"}}) == doctest::Approx(entanglement).epsilon(1e-8));
    }
  }
  SUBCASE("Werner family") {
    // For two qubits L = 1 + 2N, so the bound is H2((1 + sqrt(1 - C^2))/2) with C = 2N.
    for (double p : {0.2, 0.5, 0.8}) {
      const DensityMatrix w(kQubits, p * vibcorr::testing::bell_state().matrix() + (1 - p) * 0.25 * identity(4));
      const double c = std::max(0.0, (3 * p - 1) / 2);
      const double expected = c == 0.0 ? 0.0 : binary_entropy((1 + std::sqrt(1 - c * c)) / 2);
      CHECK(eof_lower_bound(w, kAB) == doctest::Approx(expected).epsilon(1e-10));
    }
  }
  SUBCASE("separable and product states give zero") {
    Random rng;
    const HilbertSpace s{{"q", 2}, {"vib", 3}};
    for (int k = 0; k < 10; ++k) CHECK(eof_lower_bound(DensityMatrix(s, rng.separable(2, 3, 3)), {{"q"}, {"vib"}}) == 0.0);
  }
  SUBCASE("needs a qubit side") {
    Random rng;
    const HilbertSpace s{{"x", 3}, {"y", 3}};
    CHECK_THROWS_AS(eof_lower_bound(DensityMatrix(s, rng.density(9)), {{"x"}, {"y"}}), DimMismatch);
  }
}

TEST_CASE("mutual information") {
  CHECK(mutual_information(vibcorr::testing::bell_state(), kAB) == doctest::Approx(2.0));
  Random rng;
  const HilbertSpace s{{"q", 2}, {"vib", 5}};
  CHECK(mutual_information(DensityMatrix(s, kron(rng.density(2), rng.density(5))), {{"q"}, {"vib"}}) ==
        doctest::Approx(0.0).epsilon(1e-10));
  for (int k = 0; k < 10; ++k) {
    const ComplexVector psi = rng.unit_vector(10);
    const double e = vibcorr::testing::entropy_from_weights(vibcorr::testing::schmidt_weights(psi, 2));
    CHECK(mutual_information(pure(s, psi), {{"q"}, {"vib"}}) == doctest::Approx(2 * e).epsilon(1e-9));
  }
}

TEST_CASE("discord") {
  SUBCASE("Bell state") {
    const DiscordResult d = discord(vibcorr::testing::bell_state(), "b");
    CHECK(d.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d.mutual_information == doctest::Approx(2.0));
    CHECK(d.classical_correlation == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("Bell-diagonal states against the closed form") {
    const double cases[][3] = {{0.5, -0.5, 0.5}, {0.3, -0.5, 0.2}, {-0.6, 0.1, 0.4}, {0.1, 0.2, -0.7}, {0.0, 0.0, 0.0}};
    for (const auto& c : cases) {
      const DiscordResult d = discord(bell_diagonal(c[0], c[1], c[2]), "b");
      CHECK(d.value == doctest::Approx(bell_diagonal_discord(c[0], c[1], c[2])).epsilon(1e-7));
      CHECK(d.classical_correlation >= d.grid_classical_correlation - 1e-15);
    }
  }
  SUBCASE("pure states: discord equals entanglement entropy") {
    Random rng;
    const HilbertSpace s{{"vib", 4}, {"q", 2}};
    for (int k = 0; k < 8; ++k) {
      const ComplexVector psi = rng.unit_vector(8);
      const double e = vibcorr::testing::entropy_from_weights(vibcorr::testing::schmidt_weights(psi, 4));
      CHECK(discord(pure(s, psi), "q").value == doctest::Approx(e).epsilon(1e-7));
    }
  }
  SUBCASE("classical-quantum states have zero discord") {
    Random rng;
    const HilbertSpace s{{"vib", 3}, {"q", 2}};
    const QubitProjector basis{1.1, 2.3};
    const ComplexMatrix rho =
        0.3 * kron(rng.density(3), basis.plus()) + 0.7 * kron(rng.density(3), basis.minus());
    const DiscordResult d = discord(DensityMatrix(s, rho), "q");
    CHECK(d.value == doctest::Approx(0.0).epsilon(1e-9));
    // same measurement up to relabelling the outcomes
    const double same = (d.argmin.plus() - basis.plus()).cwiseAbs().maxCoeff();
    const double swapped = (d.argmin.plus() - basis.minus()).cwiseAbs().maxCoeff();
    CHECK(std::min(same, swapped) < 1e-3);
  }
  SUBCASE("invariant under local unitaries") {
    Random rng(3);
    const HilbertSpace s{{"vib", 3}, {"q", 2}};
    const DensityMatrix rho(s, rng.density(6, 2));
    const ComplexMatrix u = kron(rng.unitary(3), rng.unitary(2));
    const DensityMatrix rotated(s, u * rho.matrix() * u.adjoint());
    CHECK(discord(rotated, "q").value == doctest::Approx(discord(rho, "q").value).epsilon(1e-7));
  }
  SUBCASE("errors") {
    Random rng;
    const HilbertSpace s{{"vib", 3}, {"q", 2}};
    const DensityMatrix rho(s, rng.density(6));
    CHECK_THROWS_AS(discord(rho, "vib"), DimMismatch);
    CHECK_THROWS_AS(discord(rho, "zz"), UnknownLabel);
    CHECK_THROWS_AS(discord(rho, "q", {1, 0}), DimMismatch);
    CHECK_THROWS_AS(discord(DensityMatrix(HilbertSpace{{"q", 2}}, 0.5 * identity(2)), "q"), DimMismatch);
  }
}

TEST_CASE("conditional entropy") {
  // Measuring one half of a Bell pair leaves the other half pure.
  CHECK(conditional_entropy(vibcorr::testing::bell_state(), "b", QubitProjector{0.7, 1.9}) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // A product state keeps the unmeasured entropy.
  Random rng;
  const HilbertSpace s{{"vib", 3}, {"q", 2}};
  const ComplexMatrix ra = rng.density(3);
  const DensityMatrix product(s, kron(ra, rng.density(2)));
  CHECK(conditional_entropy(product, "q", QubitProjector{0.3, 0.2}) ==
        doctest::Approx(von_neumann_entropy(ra)).epsilon(1e-10));
  // Zero-probability outcome
  const DensityMatrix up(s, kron(ra, QubitProjector{0.0, 0.0}.plus()));
  CHECK(conditional_entropy(up, "q", QubitProjector{0.0, 0.0}) == doctest::Approx(von_neumann_entropy(ra)).epsilon(1e-10));
}
