#pragma once

#include <span>
#include <vector>

#include "guibench/kernels/matrix.hpp"

namespace guibench::kernels {

// y = x W + b, with W stored in_dim x out_dim.
struct DenseLayer {
  Matrix weight;
  std::vector<double> bias;

  std::size_t in_dim() const noexcept { return weight.rows(); }
  std::size_t out_dim() const noexcept { return weight.cols(); }
  bool is_consistent() const noexcept { return bias.size() == weight.cols(); }

  // Throws DimensionMismatch.
  Matrix forward(const Matrix& x) const;
  std::vector<double> forward_row(std::span<const double> x) const;

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

// Zero-bias dense layer wrapping `weight`.
DenseLayer dense_from_weight(Matrix weight);

double gelu(double x) noexcept;

// Two dense layers with GELU between them.
struct Mlp {
  DenseLayer up;
  DenseLayer down;

  std::size_t in_dim() const noexcept { return up.in_dim(); }
  std::size_t out_dim() const noexcept { return down.out_dim(); }
  bool is_consistent() const noexcept {
    return up.is_consistent() && down.is_consistent() && up.out_dim() == down.in_dim();
  }
  bool same_shape(const Mlp& other) const noexcept {
    return up.weight.rows() == other.up.weight.rows() &&
           up.weight.cols() == other.up.weight.cols() &&
           down.weight.rows() == other.down.weight.rows() &&
           down.weight.cols() == other.down.weight.cols();
  }

  Matrix forward(const Matrix& x) const;
  std::vector<double> forward_row(std::span<const double> x) const;

  friend bool operator==(const Mlp&, const Mlp&) = default;
};

}  // namespace guibench::kernels
