#include "guibench/kernels/moe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "guibench/errors.hpp"

namespace guibench::kernels {

void MoeLayer::validate() const {
  if (num_experts < 1) throw InvalidConfig("moe needs at least one expert");
  if (top_k < 1 || top_k > num_experts) {
    throw InvalidConfig("top_k must be in [1, num_experts], got " + std::to_string(top_k));
  }
  if (experts.size() != num_experts) {
    throw InvalidConfig("expected " + std::to_string(num_experts) + " experts, have " +
                        std::to_string(experts.size()));
  }
  for (const auto& e : experts) {
    if (!e.is_consistent() || !e.same_shape(experts.front())) {
      throw InvalidConfig("expert shapes are not identical");
    }
  }
  if (router.cols() != num_experts || router.rows() != experts.front().in_dim()) {
    throw InvalidConfig("router must be " + std::to_string(experts.front().in_dim()) + "x" +
                        std::to_string(num_experts));
  }
}

MoeLayer expand_dense_to_moe(const Mlp& dense, std::size_t num_experts, std::size_t top_k,
                             Matrix router_init) {
  MoeLayer layer;
  layer.num_experts = num_experts;
  layer.top_k = top_k;
  layer.router = std::move(router_init);
  layer.experts.assign(num_experts, dense);
  if (!dense.is_consistent()) throw InvalidConfig("dense MLP shapes are inconsistent");
  layer.validate();
  return layer;
}

std::vector<Gate> moe_gates(std::span<const double> x, const MoeLayer& layer) {
  if (x.size() != layer.in_dim()) {
    throw DimensionMismatch("moe input width " + std::to_string(x.size()) + " does not match " +
                            std::to_string(layer.in_dim()));
  }
  std::vector<double> logits(layer.num_experts, 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto w = layer.router.row(k);
    for (std::size_t e = 0; e < logits.size(); ++e) logits[e] += x[k] * w[e];
  }

  std::vector<std::size_t> order(layer.num_experts);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return logits[a] > logits[b]; });
  order.resize(layer.top_k);

  const double peak = logits[order.front()];
  std::vector<Gate> gates;
  gates.reserve(order.size());
  double total = 0;
  for (std::size_t e : order) {
    const double g = std::exp(logits[e] - peak);
    gates.push_back({e, g});
    total += g;
  }
  for (auto& g : gates) g.weight /= total;
  return gates;
}

Matrix moe_forward(const Matrix& x, const MoeLayer& layer) {
  if (x.cols() != layer.in_dim()) {
    throw DimensionMismatch("moe input width " + std::to_string(x.cols()) + " does not match " +
                            std::to_string(layer.in_dim()));
  }
  Matrix out(x.rows(), layer.out_dim());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto row = x.row(r);
    auto dst = out.row(r);
    for (const Gate& g : moe_gates(row, layer)) {
      const auto y = layer.experts[g.expert].forward_row(row);
      for (std::size_t j = 0; j < y.size(); ++j) dst[j] += g.weight * y[j];
    }
  }
  return out;
}

}  // namespace guibench::kernels
