#include "guibench/kernels/adapter.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "guibench/errors.hpp"

namespace guibench::kernels {

bool AdapterConfig::is_consistent() const noexcept {
  return num_queries >= 1 && queries.rows() == num_queries && queries.cols() == feature_dim &&
         fusion.is_consistent();
}

AdapterConfig make_adapter_config(std::size_t feature_dim, std::size_t fused_in_dim,
                                  std::size_t model_dim, std::uint64_t seed,
                                  std::size_t num_queries) {
  if (feature_dim == 0 || num_queries == 0) {
    throw InvalidConfig("adapter needs feature_dim >= 1 and num_queries >= 1");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> q_dist(0.0, 1.0 / std::sqrt(static_cast<double>(feature_dim)));
  std::normal_distribution<double> w_dist(
      0.0, 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(fused_in_dim, 1))));

  AdapterConfig cfg;
  cfg.num_queries = num_queries;
  cfg.feature_dim = feature_dim;
  cfg.queries = Matrix(num_queries, feature_dim);
  for (double& v : cfg.queries.data()) v = q_dist(rng);
  Matrix w(fused_in_dim, model_dim);
  for (double& v : w.data()) v = w_dist(rng);
  cfg.fusion = dense_from_weight(std::move(w));
  return cfg;
}

Matrix cross_attention_pool(const Matrix& features, const AdapterConfig& cfg) {
  if (!cfg.is_consistent()) throw DimensionMismatch("adapter config shapes are inconsistent");
  if (features.rows() == 0) throw DimensionMismatch("cross attention needs at least one feature row");
  if (features.cols() != cfg.feature_dim) {
    throw DimensionMismatch("feature width " + std::to_string(features.cols()) +
                            " does not match adapter feature_dim " +
                            std::to_string(cfg.feature_dim));
  }

  const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.feature_dim));
  const std::size_t t_len = features.rows();

  // scores = Q F^T, one row per query, softmaxed in place.
  Matrix weights(cfg.num_queries, t_len);
  for (std::size_t q = 0; q < cfg.num_queries; ++q) {
    const auto query = cfg.queries.row(q);
    auto w = weights.row(q);
    double peak = -INFINITY;
    for (std::size_t t = 0; t < t_len; ++t) {
      const auto f = features.row(t);
      double dot = 0;
      for (std::size_t k = 0; k < f.size(); ++k) dot += query[k] * f[k];
      w[t] = dot * scale;
      peak = std::max(peak, w[t]);
    }
    double total = 0;
    for (double& v : w) {
      v = std::exp(v - peak);
      total += v;
    }
    for (double& v : w) v /= total;
  }
  return matmul(weights, features);
}

Matrix fuse_branches(std::span<const Matrix> branches, const AdapterConfig& cfg) {
  if (branches.empty()) throw DimensionMismatch("fuse_branches needs at least one branch");
  const Matrix joined = hconcat(branches);
  if (joined.cols() != cfg.fusion.in_dim()) {
    throw DimensionMismatch("concatenated width " + std::to_string(joined.cols()) +
                            " does not match fusion input " + std::to_string(cfg.fusion.in_dim()));
  }
  return cfg.fusion.forward(joined);
}

}  // namespace guibench::kernels
