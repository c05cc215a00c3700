#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/invariants.hpp"

using namespace vibcorr::testing;

// Fewer cases than the acceptance run; same checks and seed.
constexpr int kCases = 100;

TEST_CASE("module invariants") {
  for (const Invariant& inv : all_invariants()) {
    SUBCASE((inv.module + ": " + inv.name).c_str()) {
      const InvariantOutcome out = run_invariant(inv, kCases);
      INFO(inv.module << ": " << inv.name << " worst " << out.worst << " vs " << inv.tolerance << " " << out.detail);
      CHECK(out.passed);
    }
  }
}
