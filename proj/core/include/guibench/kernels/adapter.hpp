#pragma once

#include <cstdint>
#include <span>

#include "guibench/kernels/layers.hpp"
#include "guibench/kernels/matrix.hpp"

namespace guibench::kernels {

inline constexpr std::size_t kDefaultNumQueries = 256;

// Learnable-query compression of variable-length visual features, plus the
// dense layer that fuses several encoder branches.
struct AdapterConfig {
  std::size_t num_queries = kDefaultNumQueries;
  std::size_t feature_dim = 0;
  Matrix queries;     // num_queries x feature_dim
  DenseLayer fusion;  // sum(branch widths) -> model_dim

  // Shapes agree with num_queries/feature_dim and num_queries >= 1.
  bool is_consistent() const noexcept;
};

// 256 queries drawn from N(0, 1/feature_dim) and a random fusion layer, seeded.
AdapterConfig make_adapter_config(std::size_t feature_dim, std::size_t fused_in_dim,
                                  std::size_t model_dim, std::uint64_t seed,
                                  std::size_t num_queries = kDefaultNumQueries);

// out[q] = sum_t softmax_t(<query_q, feature_t> / sqrt(d)) * feature_t.
// Single head, no output projection. Output has num_queries rows for any
// T >= 1. Throws DimensionMismatch.
Matrix cross_attention_pool(const Matrix& features, const AdapterConfig& cfg);

// Per-row concatenation of the branches, then cfg.fusion.
// Throws DimensionMismatch on unequal row counts or a width the fusion layer
// does not accept.
Matrix fuse_branches(std::span<const Matrix> branches, const AdapterConfig& cfg);

}  // namespace guibench::kernels
