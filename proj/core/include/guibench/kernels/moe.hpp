#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "guibench/kernels/layers.hpp"
#include "guibench/kernels/matrix.hpp"

namespace guibench::kernels {

// Sparse mixture of MLP experts with a linear top-k softmax router.
struct MoeLayer {
  std::size_t num_experts = 4;
  std::size_t top_k = 2;
  Matrix router;             // in_dim x num_experts
  std::vector<Mlp> experts;  // all the same shape

  std::size_t in_dim() const noexcept { return router.rows(); }
  std::size_t out_dim() const noexcept { return experts.empty() ? 0 : experts.front().out_dim(); }
  // Throws InvalidConfig describing the first violated invariant.
  void validate() const;
};

struct Gate {
  std::size_t expert;
  double weight;
};

// Builds a layer whose experts are all copies of `dense`. The router is
// `router_init` (in_dim x num_experts). Throws InvalidConfig.
MoeLayer expand_dense_to_moe(const Mlp& dense, std::size_t num_experts, std::size_t top_k,
                             Matrix router_init);

// Kept experts for one input row in descending logit order (ties go to the
// lower index) with softmax weights over the kept logits.
std::vector<Gate> moe_gates(std::span<const double> x, const MoeLayer& layer);

// Per row: sum over kept experts of gate * expert(x). Throws DimensionMismatch.
Matrix moe_forward(const Matrix& x, const MoeLayer& layer);

}  // namespace guibench::kernels
