#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "guibench/action.hpp"
#include "guibench/cot_protocol.hpp"
#include "guibench/evaluation.hpp"

namespace {

void BM_MatchClick(benchmark::State& state) {
  const auto truth = guibench::GroundTruth::click({100, 200, 300, 260});
  const guibench::Action pred = guibench::Click{{305, 230}};
  for (auto _ : state) benchmark::DoNotOptimize(guibench::match_step(pred, truth));
}
BENCHMARK(BM_MatchClick);

void BM_ParseResponse(benchmark::State& state) {
  const std::string reply =
      "<observation>: A list of restaurants with a search bar at the top.\n"
      "<Reasoning>: The task asks for coffee, so search for it.\n"
      "<Action>: CLICK(540,1020)\n"
      "<Summary>: Opened the search bar to look for coffee.\n";
  for (auto _ : state) benchmark::DoNotOptimize(guibench::parse_response(reply));
}
BENCHMARK(BM_ParseResponse);

void BM_AggregateCounts(benchmark::State& state) {
  std::mt19937 rng(5);
  std::vector<guibench::MetricsCounts> parts(static_cast<std::size_t>(state.range(0)));
  for (auto& p : parts) {
    p.all_intentions = 1;
    p.all_steps = rng() % 12 + 1;
    p.success_steps = rng() % (p.all_steps + 1);
  }
  for (auto _ : state) {
    guibench::MetricsCounts total;
    for (const auto& p : parts) total += p;
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_AggregateCounts)->Arg(100)->Arg(10000);

}  // namespace
