#include "guibench/kernels/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "guibench/errors.hpp"

namespace guibench::kernels {

namespace {
std::string shape(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}
}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionMismatch("matrix data length " + std::to_string(data_.size()) +
                            " does not match shape " + shape(rows_, cols_));
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("matmul " + shape(a.rows(), a.cols()) + " * " +
                            shape(b.rows(), b.cols()));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      const auto src = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) dst[j] += aik * src[j];
    }
  }
  return out;
}

Matrix hconcat(std::span<const Matrix> parts) {
  if (parts.empty()) return {};
  const std::size_t rows = parts.front().rows();
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) {
      throw DimensionMismatch("hconcat: row counts differ (" + std::to_string(rows) + " vs " +
                              std::to_string(p.rows()) + ")");
    }
    cols += p.cols();
  }
  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto dst = out.row(r).begin();
    for (const auto& p : parts) {
      const auto src = p.row(r);
      dst = std::copy(src.begin(), src.end(), dst);
    }
  }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("max_abs_diff " + shape(a.rows(), a.cols()) + " vs " +
                            shape(b.rows(), b.cols()));
  }
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

}  // namespace guibench::kernels
