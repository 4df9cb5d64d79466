#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "guibench/patch_grid.hpp"

namespace {

void BM_PatchGridWideScreenshot(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(guibench::compute_grid(1216, 576));
  }
}
BENCHMARK(BM_PatchGridWideScreenshot);

void BM_PatchGridRandomSizes(benchmark::State& state) {
  std::mt19937 rng(42);
  std::uniform_int_distribution<std::uint32_t> side(1, 4096);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> sizes(1024);
  for (auto& s : sizes) s = {side(rng), side(rng)};
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [w, h] = sizes[i++ & 1023];
    benchmark::DoNotOptimize(guibench::compute_grid(w, h, {static_cast<std::uint32_t>(state.range(0)), 16}));
  }
}
BENCHMARK(BM_PatchGridRandomSizes)->Arg(64)->Arg(784)->Arg(4096);

}  // namespace
