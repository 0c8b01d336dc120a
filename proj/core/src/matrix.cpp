#include "paretolens/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "paretolens/errors.hpp"

namespace paretolens {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  const std::size_t cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw RaggedRows(r, cols, rows[r].size());
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto src = row(r);
    out[r].assign(src.begin(), src.end());
  }
  return out;
}

Matrix Matrix::vstack(const Matrix& top, const Matrix& bottom) {
  if (top.empty()) return bottom;
  if (bottom.empty()) return top;
  if (top.cols() != bottom.cols()) {
    throw DimensionMismatch("vstack columns", top.cols(), bottom.cols());
  }
  Matrix out(top.rows() + bottom.rows(), top.cols());
  std::copy(top.data_.begin(), top.data_.end(), out.data_.begin());
  std::copy(bottom.data_.begin(), bottom.data_.end(),
            out.data_.begin() + static_cast<std::ptrdiff_t>(top.data_.size()));
  return out;
}

Matrix Matrix::slice_rows(std::size_t first, std::size_t count) const {
  Matrix out(count, cols_);
  const auto begin = data_.begin() + static_cast<std::ptrdiff_t>(first * cols_);
  std::copy(begin, begin + static_cast<std::ptrdiff_t>(count * cols_), out.data_.begin());
  return out;
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sum += d * d;
  }
  return sum;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept {
  return std::sqrt(squared_distance(a, b));
}

std::vector<Point2> to_points(const Matrix& two_columns) {
  std::vector<Point2> out(two_columns.rows());
  for (std::size_t r = 0; r < two_columns.rows(); ++r) {
    out[r] = {two_columns(r, 0), two_columns(r, 1)};
  }
  return out;
}

Matrix from_points(const std::vector<Point2>& points) {
  Matrix m(points.size(), 2);
  for (std::size_t r = 0; r < points.size(); ++r) {
    m(r, 0) = points[r][0];
    m(r, 1) = points[r][1];
  }
  return m;
}

}  // namespace paretolens
