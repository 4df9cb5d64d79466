#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace guibench::kernels {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Quick property checks over randomly drawn parameters: duplicate-expert
// equivalence, gate normalization, fixed adapter length, convexity of the
// pooled rows and parameter-file round trips.
std::vector<CheckResult> run_self_check(std::uint64_t seed = 7, std::size_t trials = 50);

}  // namespace guibench::kernels
