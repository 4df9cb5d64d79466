#include "guibench/patch_grid.hpp"

#include <array>
#include <cmath>
#include <optional>

#include "guibench/errors.hpp"

namespace guibench {

namespace {

__extension__ typedef unsigned __int128 u128;

// Largest n with n*n*den <= num. den > 0.
std::uint64_t floor_sqrt_ratio(u128 num, u128 den) {
  const double approx = std::sqrt(static_cast<double>(num) / static_cast<double>(den));
  auto n = static_cast<std::uint64_t>(approx);
  auto fits = [&](u128 k) { return k * k * den <= num; };
  while (n > 0 && !fits(n)) --n;
  while (fits(static_cast<u128>(n) + 1)) ++n;
  return n;
}

struct Candidate {
  std::uint64_t n_w;
  std::uint64_t n_h;
};

// floor and ceil of sqrt(num/den), each clamped to >= 1.
std::array<std::uint64_t, 2> round_both_ways(u128 num, u128 den) {
  const std::uint64_t lo = floor_sqrt_ratio(num, den);
  const bool exact = static_cast<u128>(lo) * lo * den == num;
  const std::uint64_t hi = exact ? lo : lo + 1;
  return {lo < 1 ? 1 : lo, hi < 1 ? 1 : hi};
}

// Distortion of (n_w, n_h) is max(p,q)/min(p,q) with p = n_w*h, q = n_h*w,
// which orders the same way as |ln(p/q)|. Every factor is below 2^64.
bool less_distorted(const Candidate& a, const Candidate& b, std::uint64_t w, std::uint64_t h) {
  const u128 pa = static_cast<u128>(a.n_w) * h;
  const u128 qa = static_cast<u128>(a.n_h) * w;
  const u128 pb = static_cast<u128>(b.n_w) * h;
  const u128 qb = static_cast<u128>(b.n_h) * w;
  const auto [hi_a, lo_a] = pa > qa ? std::pair{pa, qa} : std::pair{qa, pa};
  const auto [hi_b, lo_b] = pb > qb ? std::pair{pb, qb} : std::pair{qb, pb};
  // hi_a/lo_a < hi_b/lo_b; each side is a product of two values < 2^64.
  return hi_a * lo_b < hi_b * lo_a;
}

bool better(const Candidate& a, const Candidate& b, std::uint64_t w, std::uint64_t h) {
  const std::uint64_t prod_a = a.n_w * a.n_h;
  const std::uint64_t prod_b = b.n_w * b.n_h;
  if (prod_a != prod_b) return prod_a > prod_b;
  if (less_distorted(a, b, w, h)) return true;
  if (less_distorted(b, a, w, h)) return false;
  return a.n_w > b.n_w;
}

}  // namespace

PatchGrid compute_grid(std::uint32_t width, std::uint32_t height, PatchGridSpec spec) {
  if (spec.budget_tokens < 1) throw InfeasibleBudget("token budget must be at least 1");
  if (spec.patch_px < 1) throw InvalidConfig("patch size must be at least 1 pixel");
  if (width < 1 || height < 1) throw InvalidConfig("image dimensions must be positive");

  const std::uint64_t budget = spec.budget_tokens;
  const std::uint64_t w = width;
  const std::uint64_t h = height;

  // c_w^2 = L*w/h, c_h^2 = L*h/w
  const auto cw = round_both_ways(static_cast<u128>(budget) * w, h);
  const auto ch = round_both_ways(static_cast<u128>(budget) * h, w);

  std::optional<Candidate> best;
  for (std::uint64_t nw : cw) {
    for (std::uint64_t nh : ch) {
      if (static_cast<u128>(nw) * nh > budget) continue;
      Candidate c{nw, nh};
      if (!best || better(c, *best, w, h)) best = c;
    }
  }

  if (!best) {
    if (w <= h) {
      best = Candidate{cw[0], budget / cw[0]};
    } else {
      best = Candidate{budget / ch[0], ch[0]};
    }
  }

  PatchGrid g;
  g.n_w = static_cast<std::uint32_t>(best->n_w);
  g.n_h = static_cast<std::uint32_t>(best->n_h);
  g.used_tokens = g.n_w * g.n_h;
  g.padding_tokens = spec.budget_tokens - g.used_tokens;
  g.resized_w = static_cast<std::uint64_t>(g.n_w) * spec.patch_px;
  g.resized_h = static_cast<std::uint64_t>(g.n_h) * spec.patch_px;
  return g;
}

std::string format_grid(const PatchGrid& g) {
  return "n_w=" + std::to_string(g.n_w) + " n_h=" + std::to_string(g.n_h) +
         " used=" + std::to_string(g.used_tokens) + " pad=" + std::to_string(g.padding_tokens);
}

}  // namespace guibench
