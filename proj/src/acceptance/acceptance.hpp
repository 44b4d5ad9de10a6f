#pragma once
// The acceptance suite: twelve numbered criteria, each printed as one
// PASS/FAIL line. Used by the `acceptance` test binary and by
// `freeball selftest`.

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace freeball::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs every criterion (or only those listed in `only`), printing one line
/// per criterion to `out` as it finishes.
std::vector<CriterionResult> run_all(std::ostream& out, std::uint64_t seed = 20240611,
                                     const std::vector<int>& only = {});

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace freeball::acceptance
