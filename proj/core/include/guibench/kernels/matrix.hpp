#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace guibench::kernels {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // Throws DimensionMismatch if data.size() != rows * cols.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  // Nested literal, rows must be equal length.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  bool all_finite() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// a (m x k) * b (k x n). Throws DimensionMismatch.
Matrix matmul(const Matrix& a, const Matrix& b);

// Row-wise concatenation [a | b | ...]; all inputs share a row count.
Matrix hconcat(std::span<const Matrix> parts);

// max |a - b| over all entries. Throws DimensionMismatch.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace guibench::kernels
