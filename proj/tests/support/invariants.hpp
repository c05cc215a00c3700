#pragma once

// Randomized property checks for every module. Shared by the unit property
// tests (few cases) and acceptance criterion 9 (1000 cases, fixed seed).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace vibcorr::testing {

struct InvariantOutcome {
  bool passed = true;
  double worst = 0.0;  // largest violation metric seen
  std::string detail;
};

struct Invariant {
  std::string module;
  std::string name;
  double tolerance = 0.0;
  // Runs `cases` randomized cases and reports the worst one.
  std::function<InvariantOutcome(Random&, int cases, double tolerance)> check;
};

const std::vector<Invariant>& all_invariants();

// Seeds a fresh generator from `seed` and the invariant's name, so results do
// not depend on which other invariants ran first.
InvariantOutcome run_invariant(const Invariant& inv, int cases, std::uint64_t seed = kSeed);

}  // namespace vibcorr::testing
