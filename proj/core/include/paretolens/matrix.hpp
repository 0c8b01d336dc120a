#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace paretolens {

using Point2 = std::array<double, 2>;

/// Dense row-major matrix of doubles. Rows are the observations.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Builds from nested rows; throws RaggedRows if the rows are not rectangular.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  std::vector<std::vector<double>> to_rows() const;

  /// Rows of `top` followed by rows of `bottom`; column counts must agree
  /// unless one side is empty.
  static Matrix vstack(const Matrix& top, const Matrix& bottom);

  /// Copies rows [first, first + count).
  Matrix slice_rows(std::size_t first, std::size_t count) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;
double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept;

std::vector<Point2> to_points(const Matrix& two_columns);
Matrix from_points(const std::vector<Point2>& points);

}  // namespace paretolens
