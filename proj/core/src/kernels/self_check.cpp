#include "guibench/kernels/self_check.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "guibench/kernels/adapter.hpp"
#include "guibench/kernels/moe.hpp"
#include "guibench/kernels/param_io.hpp"

namespace guibench::kernels {
namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  Matrix m(r, c);
  for (double& v : m.data()) v = dist(rng);
  return m;
}

Mlp random_mlp(std::mt19937_64& rng, std::size_t in, std::size_t hidden, std::size_t out) {
  Mlp mlp;
  mlp.up = DenseLayer{random_matrix(rng, in, hidden), std::vector<double>(hidden, 0.1)};
  mlp.down = DenseLayer{random_matrix(rng, hidden, out), std::vector<double>(out, -0.05)};
  return mlp;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

}  // namespace

std::vector<CheckResult> run_self_check(std::uint64_t seed, std::size_t trials) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> results;

  {
    double worst = 0;
    double worst_gate = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      for (std::size_t experts : {1u, 2u, 4u, 8u}) {
        const std::size_t k = 1 + rng() % experts;
        const Mlp dense = random_mlp(rng, 6, 10, 5);
        const MoeLayer moe = expand_dense_to_moe(dense, experts, k, random_matrix(rng, 6, experts, 3.0));
        const Matrix x = random_matrix(rng, 4, 6);
        const Matrix want = dense.forward(x);
        const Matrix got = moe_forward(x, moe);
        for (std::size_t i = 0; i < want.size(); ++i) {
          const double rel = std::abs(got.data()[i] - want.data()[i]) / (1 + std::abs(want.data()[i]));
          worst = std::max(worst, rel);
        }
        for (std::size_t r = 0; r < x.rows(); ++r) {
          double sum = 0;
          for (const auto& g : moe_gates(x.row(r), moe)) sum += g.weight;
          worst_gate = std::max(worst_gate, std::abs(sum - 1.0));
        }
      }
    }
    results.push_back({"moe duplicate-expert equivalence", worst <= 1e-9, "max rel err " + sci(worst)});
    results.push_back({"moe gate normalization", worst_gate <= 1e-12, "max |sum-1| " + sci(worst_gate)});
  }

  {
    const AdapterConfig cfg = make_adapter_config(8, 8, 8, seed);
    bool sized = true;
    double hull_violation = 0;
    for (std::size_t t_len : {1u, 7u, 256u, 2000u}) {
      const Matrix features = random_matrix(rng, t_len, 8);
      const Matrix pooled = cross_attention_pool(features, cfg);
      sized = sized && pooled.rows() == kDefaultNumQueries && pooled.cols() == 8;
      for (std::size_t c = 0; c < 8; ++c) {
        double lo = INFINITY, hi = -INFINITY;
        for (std::size_t r = 0; r < features.rows(); ++r) {
          lo = std::min(lo, features(r, c));
          hi = std::max(hi, features(r, c));
        }
        for (std::size_t r = 0; r < pooled.rows(); ++r) {
          hull_violation = std::max({hull_violation, lo - pooled(r, c), pooled(r, c) - hi});
        }
      }
    }
    results.push_back({"adapter fixed length", sized, "256 rows for T in {1,7,256,2000}"});
    results.push_back({"adapter convex hull", hull_violation <= 1e-12,
                       "max bound violation " + sci(std::max(0.0, hull_violation))});
  }

  {
    const MoeLayer moe = expand_dense_to_moe(random_mlp(rng, 3, 4, 2), 4, 2, random_matrix(rng, 3, 4));
    std::stringstream buf;
    write_params(buf, moe);
    const MoeLayer back = read_moe(buf);
    const bool same = back.router == moe.router && back.experts == moe.experts &&
                      back.top_k == moe.top_k && back.num_experts == moe.num_experts;
    results.push_back({"parameter file round trip", same, "moe 4x(3->4->2)"});
  }
  return results;
}

}  // namespace guibench::kernels
