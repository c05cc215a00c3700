#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "support/oracles.hpp"
#include "vibcorr/dynamics.hpp"
#include "vibcorr/errors.hpp"
#include "vibcorr/model.hpp"

using namespace vibcorr;

TEST_CASE("exciton basis for the default dimer") {
  const ModelParams p;
  const ExcitonBasis b = exciton_basis(p);
  CHECK(b.lambda_plus == doctest::Approx(529.0604880351584).epsilon(1e-13));
  CHECK(b.lambda_minus == doctest::Approx(-529.0604880351584).epsilon(1e-13));
  CHECK(b.mixing_angle == doctest::Approx(0.17478169205499364).epsilon(1e-13));

  const ComplexMatrix h = dimer_hamiltonian(p);
  CHECK((h * b.x_plus - b.lambda_plus * b.x_plus).norm() < 1e-10);
  CHECK((h * b.x_minus - b.lambda_minus * b.x_minus).norm() < 1e-10);
  CHECK(std::abs(b.x_plus.dot(b.x_minus)) < 1e-15);
  // X+ is mostly the excitation on the higher-energy site
  CHECK(std::norm(b.x_plus(0)) > 0.99);
}

TEST_CASE("exciton basis edge cases") {
  ModelParams p;
  p.v = 0.0;
  const ExcitonBasis b = exciton_basis(p);
  CHECK(b.mixing_angle == 0.0);
  CHECK(std::abs(b.x_plus(0)) == doctest::Approx(1.0));
  p.delta_e = 0.0;
  CHECK_THROWS_AS(exciton_basis(p), DegenerateDimer);
  p.v = 50.0;
  CHECK(exciton_basis(p).mixing_angle == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("ModelParams::validate names the offending field") {
  auto field_of = [](ModelParams p) -> std::string {
    try {
      p.validate();
    } catch (const ValidationError& e) {
      return e.field();
    }
    return "";
  };
  ModelParams p;
  CHECK(field_of(p).empty());
  p.omega_vib = -1.0;
  CHECK(field_of(p) == "omega_vib_cm1");
  p = {};
  p.temperature = -3.0;
  CHECK(field_of(p) == "temperature_k");
  p = {};
  p.n_trunc_vib = 0;
  CHECK(field_of(p) == "n_trunc_vib");
  p = {};
  p.g = std::nan("");
  CHECK(field_of(p) == "g_cm1");
  p = {};
  p.g0 = -1.0;
  CHECK(field_of(p) == "g0_cm1");
  CHECK(bath_init_from_string("thermal") == BathInit::thermal);
  CHECK_THROWS_AS(bath_init_from_string("hot"), ValidationError);
}

TEST_CASE("effective Hamiltonian structure") {
  const ModelParams p;
  const Operator h = build_effective_hamiltonian(p, 5);
  CHECK(h.space == HilbertSpace{{labels::kDimer, 2}, {labels::kVib, 6}});
  CHECK(hermiticity_defect(h.matrix) < 1e-14);
  // g = 0 decouples: spectrum is lambda_pm + n omega
  ModelParams free = p;
  free.g = 0.0;
  const RealVector e = eigvalsh(build_effective_hamiltonian(free, 3).matrix);
  std::vector<double> expected;
  for (int n = 0; n <= 3; ++n) {
    expected.push_back(-529.0604880351584 + n * 1111.0);
    expected.push_back(529.0604880351584 + n * 1111.0);
  }
  std::sort(expected.begin(), expected.end());
  for (std::size_t k = 0; k < expected.size(); ++k) CHECK(e(static_cast<Eigen::Index>(k)) == doctest::Approx(expected[k]).epsilon(1e-13));
}

TEST_CASE("polaron shift with V = 0") {
  ModelParams p;
  p.v = 0.0;
  const RealVector e = eigvalsh(build_effective_hamiltonian(p, 12).matrix);
  const double shift = -p.g * p.g / (2.0 * p.omega_vib);
  CHECK(shift == doctest::Approx(-32.10729522952296).epsilon(1e-13));
  CHECK(e(0) == doctest::Approx(-0.5 * p.delta_e + shift).epsilon(1e-12));
  // next level is the other site's ground state, since delta_e < omega_vib
  CHECK(e(1) == doctest::Approx(0.5 * p.delta_e + shift).epsilon(1e-12));
  CHECK(e(2) == doctest::Approx(-0.5 * p.delta_e + shift + p.omega_vib).epsilon(1e-10));
}

TEST_CASE("full Hamiltonian conserves the excitation number") {
  const ModelParams p;
  for (auto modes : {PhononModes::site, PhononModes::collective}) {
    const Operator h = build_full_hamiltonian(p, 2, modes);
    CHECK(h.space.dim() == 2 * 2 * 3 * 3);
    CHECK(hermiticity_defect(h.matrix) < 1e-12);
    const ComplexMatrix n = excitation_number(h.space);
    CHECK((h.matrix * n - n * h.matrix).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("single-excitation reduction") {
  const ModelParams p;
  for (int n : {1, 2, 3}) {
    const ReductionReport r = reduce_to_effective(p, n);
    CHECK(r.spectral_deviation <= 1e-8 * r.full_norm);
    CHECK(r.block_deviation <= 1e-8 * r.full_norm);
    CHECK(r.h_eff.space.dim() == 2 * (n + 1));
  }
}

TEST_CASE("thermal state") {
  const DensityMatrix rho = thermal_state(1111.0, 270.0, 5);
  const auto p = vibcorr::testing::gibbs_weights(1111.0, 270.0, 5);
  CHECK(p[0] == doctest::Approx(0.9973156063760517).epsilon(1e-13));
  for (int n = 0; n <= 5; ++n) CHECK(rho.matrix()(n, n).real() == doctest::Approx(p[static_cast<std::size_t>(n)]).epsilon(1e-13));
  double nbar = 0.0;
  for (int n = 0; n <= 5; ++n) nbar += n * p[static_cast<std::size_t>(n)];
  CHECK(nbar == doctest::Approx(0.0026916189887980684).epsilon(1e-10));
  CHECK(mandel_q(rho, labels::kVib) == doctest::Approx(0.0026916189846319938).epsilon(1e-8));
  CHECK(von_neumann_entropy(rho.matrix()) == doctest::Approx(0.026867592638141032).epsilon(1e-12));

  const DensityMatrix cold = thermal_state(1111.0, 0.0, 5);
  CHECK(cold.matrix()(0, 0).real() == 1.0);
  CHECK(cold.purity() == doctest::Approx(1.0));
  CHECK_THROWS_AS(mandel_q(cold, labels::kVib), VacuumExpectation);
  CHECK_THROWS_AS(thermal_state(-1.0, 270.0, 5), ValidationError);
}

TEST_CASE("initial state") {
  ModelParams p;
  const DensityMatrix rho = initial_state(p);
  const ExcitonBasis b = exciton_basis(p);
  CHECK(population_x_minus(rho, b) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(rho.space() == HilbertSpace{{labels::kDimer, 2}, {labels::kVib, 6}});

  p.n_trunc_bath = 4;
  const DensityMatrix with_bath = initial_state(p, true);
  CHECK(with_bath.dim() == 2 * 6 * 5);
  CHECK(partial_trace(with_bath, {labels::kBath}).matrix()(0, 0).real() == doctest::Approx(1.0));
  p.bath_init = BathInit::thermal;
  const DensityMatrix warm = partial_trace(initial_state(p, true), {labels::kBath});
  CHECK(warm.matrix()(0, 0).real() == doctest::Approx(vibcorr::testing::gibbs_weights(p.omega0, 270.0, 4)[0]).epsilon(1e-12));

  p.n_trunc_bath = 0;
  CHECK_THROWS_AS(initial_state(p, true), ValidationError);
  CHECK_THROWS_AS(build_total_hamiltonian(p), ValidationError);
}

TEST_CASE("total Hamiltonian with g0 = 0 splits off the bath") {
  ModelParams p;
  p.n_trunc_bath = 3;
  const Operator h = build_total_hamiltonian(p);
  const ComplexMatrix expected = kron(build_effective_hamiltonian(p, p.n_trunc_vib).matrix, identity(4)) +
                                 kron(identity(12), p.omega0 * number_operator(3));
  CHECK((h.matrix - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("automatic bath truncation") {
  ModelParams p;
  p.g0 = 0.0;
  CHECK(required_bath_truncation(p, 1000.0) >= 5);
  p.g0 = 26.71;
  const int n_small = required_bath_truncation(p, 1000.0);
  p.g0 = 53.42;
  const int n_large = required_bath_truncation(p, 1000.0);
  CHECK(n_large > n_small);
  p.n_trunc_bath = 7;
  CHECK(with_resolved_bath(p, 1000.0).n_trunc_bath == 7);
  p.n_trunc_bath = 0;
  CHECK(with_resolved_bath(p, 1000.0).n_trunc_bath == n_large);
}
