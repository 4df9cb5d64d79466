#include "guibench/kernels/layers.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "guibench/errors.hpp"

namespace guibench::kernels {

Matrix DenseLayer::forward(const Matrix& x) const {
  if (x.cols() != in_dim()) {
    throw DimensionMismatch("dense layer expects width " + std::to_string(in_dim()) + ", got " +
                            std::to_string(x.cols()));
  }
  Matrix out(x.rows(), out_dim());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto y = forward_row(x.row(r));
    std::copy(y.begin(), y.end(), out.row(r).begin());
  }
  return out;
}

std::vector<double> DenseLayer::forward_row(std::span<const double> x) const {
  if (x.size() != in_dim() || !is_consistent()) {
    throw DimensionMismatch("dense layer input width " + std::to_string(x.size()) +
                            " does not match " + std::to_string(in_dim()));
  }
  std::vector<double> y(bias);
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto w = weight.row(k);
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += x[k] * w[j];
  }
  return y;
}

DenseLayer dense_from_weight(Matrix weight) {
  std::vector<double> bias(weight.cols(), 0.0);
  return DenseLayer{std::move(weight), std::move(bias)};
}

double gelu(double x) noexcept {
  return 0.5 * x * (1.0 + std::erf(x / std::numbers::sqrt2));
}

Matrix Mlp::forward(const Matrix& x) const {
  if (x.cols() != in_dim()) {
    throw DimensionMismatch("mlp expects width " + std::to_string(in_dim()) + ", got " +
                            std::to_string(x.cols()));
  }
  Matrix out(x.rows(), out_dim());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto y = forward_row(x.row(r));
    std::copy(y.begin(), y.end(), out.row(r).begin());
  }
  return out;
}

std::vector<double> Mlp::forward_row(std::span<const double> x) const {
  auto hidden = up.forward_row(x);
  for (double& v : hidden) v = gelu(v);
  return down.forward_row(hidden);
}

}  // namespace guibench::kernels
