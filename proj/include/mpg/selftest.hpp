#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mpg {

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string detail;  // first failure, when any
};

/// Seeded randomized sweep over the library's algebraic invariants
/// (round-trips, duality, monotonicity, fast-path agreement, closure,
/// quasiconvexity, search soundness). Backs the CLI selftest command.
std::vector<CheckResult> run_selftest(std::uint64_t seed);

}  // namespace mpg
