#pragma once

#include <cstdint>
#include <string>

namespace guibench {

struct PatchGridSpec {
  std::uint32_t budget_tokens = 784;  // sequence length budget
  std::uint32_t patch_px = 16;        // square patch side
};

struct PatchGrid {
  std::uint32_t n_w = 0;
  std::uint32_t n_h = 0;
  std::uint32_t used_tokens = 0;
  std::uint32_t padding_tokens = 0;
  std::uint64_t resized_w = 0;
  std::uint64_t resized_h = 0;

  friend bool operator==(const PatchGrid&, const PatchGrid&) = default;
};

// Aspect-preserving patch tiling of a w x h image under a token budget.
//
// The ideal fractional counts are c_w = sqrt(L*w/h) and c_h = sqrt(L*h/w).
// Each is rounded both ways (clamped to >= 1); among the resulting pairs that
// fit the budget the largest product wins, then the smallest
// |ln((n_w/n_h)*(h/w))|, then the larger n_w. If no pair fits, the smaller
// side keeps its floor count and the other side takes floor(L / that).
//
// All comparisons are exact integer arithmetic, so the result is invariant
// under scaling (w, h) by an integer and transposes with (w, h).
//
// Throws InfeasibleBudget when budget_tokens < 1, InvalidConfig when
// patch_px < 1 or w/h is 0.
PatchGrid compute_grid(std::uint32_t width, std::uint32_t height, PatchGridSpec spec = {});

// `n_w=41 n_h=19 used=779 pad=5`
std::string format_grid(const PatchGrid& g);

}  // namespace guibench
