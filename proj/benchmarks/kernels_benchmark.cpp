#include <benchmark/benchmark.h>

#include <random>

#include "guibench/kernels/adapter.hpp"
#include "guibench/kernels/moe.hpp"

namespace {

using guibench::kernels::Matrix;

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::normal_distribution<double> dist;
  Matrix m(r, c);
  for (double& v : m.data()) v = dist(rng);
  return m;
}

void BM_CrossAttentionPool(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto t_len = static_cast<std::size_t>(state.range(0));
  const auto cfg = guibench::kernels::make_adapter_config(64, 64, 64, 3);
  const Matrix features = random_matrix(rng, t_len, 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(guibench::kernels::cross_attention_pool(features, cfg));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(t_len));
}
BENCHMARK(BM_CrossAttentionPool)->Arg(49)->Arg(784)->Arg(2000);

void BM_MoeForward(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto experts = static_cast<std::size_t>(state.range(0));
  guibench::kernels::Mlp dense;
  dense.up = guibench::kernels::dense_from_weight(random_matrix(rng, 64, 256));
  dense.down = guibench::kernels::dense_from_weight(random_matrix(rng, 256, 64));
  const auto layer =
      guibench::kernels::expand_dense_to_moe(dense, experts, std::min<std::size_t>(2, experts),
                                             random_matrix(rng, 64, experts));
  const Matrix x = random_matrix(rng, 32, 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(guibench::kernels::moe_forward(x, layer));
  }
}
BENCHMARK(BM_MoeForward)->Arg(1)->Arg(4)->Arg(8);

}  // namespace
