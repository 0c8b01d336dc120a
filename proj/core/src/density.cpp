#include "paretolens/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "paretolens/errors.hpp"

namespace paretolens::density {

namespace {

double sample_stddev(std::span<const Point2> points, std::size_t axis) {
  if (points.size() < 2) return 0.0;
  double mean = 0.0;
  for (const auto& p : points) mean += p[axis];
  mean /= static_cast<double>(points.size());
  double ss = 0.0;
  for (const auto& p : points) ss += (p[axis] - mean) * (p[axis] - mean);
  return std::sqrt(ss / static_cast<double>(points.size() - 1));
}

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
  if (cross(a, b, p) != 0.0) return false;
  return p[0] >= std::min(a[0], b[0]) && p[0] <= std::max(a[0], b[0]) &&
         p[1] >= std::min(a[1], b[1]) && p[1] <= std::max(a[1], b[1]);
}

}  // namespace

double scott_bandwidth(std::span<const Point2> points) {
  if (points.empty()) throw EmptyPoints();
  const double sigma = 0.5 * (sample_stddev(points, 0) + sample_stddev(points, 1));
  if (!(sigma > 0.0)) return 1.0;
  return std::pow(static_cast<double>(points.size()), -1.0 / 6.0) * sigma;
}

Bounds2D padded_bounds(std::span<const Point2> points, double margin, double bandwidth) {
  if (points.empty()) throw EmptyPoints();
  Bounds2D b{points[0][0], points[0][0], points[0][1], points[0][1]};
  for (const auto& p : points) {
    b.x_min = std::min(b.x_min, p[0]);
    b.x_max = std::max(b.x_max, p[0]);
    b.y_min = std::min(b.y_min, p[1]);
    b.y_max = std::max(b.y_max, p[1]);
  }
  const auto pad = [&](double extent) { return extent > 0.0 ? margin * extent : 3.0 * bandwidth; };
  const double px = pad(b.x_max - b.x_min);
  const double py = pad(b.y_max - b.y_min);
  b.x_min -= px;
  b.x_max += px;
  b.y_min -= py;
  b.y_max += py;
  return b;
}

DensityField kde_on_grid(std::span<const Point2> points, std::size_t grid_width,
                         std::size_t grid_height, const Bounds2D& bounds, double bandwidth) {
  if (grid_width < 1 || grid_height < 1) throw InvalidArgument("KDE grid must be at least 1x1");
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw InvalidArgument("KDE bandwidth must be positive and finite");
  }
  if (!(bounds.x_max > bounds.x_min) || !(bounds.y_max > bounds.y_min)) {
    throw InvalidArgument("KDE bounds must have positive extent");
  }

  DensityField field;
  field.grid_width = grid_width;
  field.grid_height = grid_height;
  field.bounds = bounds;
  field.bandwidth = bandwidth;
  field.values.assign(grid_width * grid_height, 0.0);
  const std::size_t r = points.size();
  if (r == 0) return field;

  // The Gaussian kernel factorises into x and y terms per point.
  const double inv_two_h2 = 1.0 / (2.0 * bandwidth * bandwidth);
  std::vector<double> gx(r * grid_width);
  std::vector<double> gy(r * grid_height);
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t c = 0; c < grid_width; ++c) {
      const double dx = field.cell_center(c, 0)[0] - points[j][0];
      gx[j * grid_width + c] = std::exp(-dx * dx * inv_two_h2);
    }
    for (std::size_t row = 0; row < grid_height; ++row) {
      const double dy = field.cell_center(0, row)[1] - points[j][1];
      gy[j * grid_height + row] = std::exp(-dy * dy * inv_two_h2);
    }
  }

  const double norm =
      1.0 / (static_cast<double>(r) * 2.0 * std::numbers::pi * bandwidth * bandwidth);
  std::vector<double> acc(grid_width);
  for (std::size_t row = 0; row < grid_height; ++row) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t j = 0; j < r; ++j) {
      const double wy = gy[j * grid_height + row];
      if (wy == 0.0) continue;
      const double* wx = gx.data() + j * grid_width;
      for (std::size_t c = 0; c < grid_width; ++c) acc[c] += wx[c] * wy;
    }
    for (std::size_t c = 0; c < grid_width; ++c) field.values[row * grid_width + c] = acc[c] * norm;
  }
  return field;
}

DensityField kde_field(std::span<const Point2> points, const KdeConfig& config) {
  if (points.empty()) throw EmptyPoints();
  const double h = config.bandwidth.value_or(scott_bandwidth(points));
  if (!(h > 0.0)) throw InvalidArgument("KDE bandwidth must be positive");
  if (!(config.margin >= 0.0)) throw InvalidArgument("KDE margin must be non-negative");
  return kde_on_grid(points, config.grid_width, config.grid_height,
                     padded_bounds(points, config.margin, h), h);
}

LassoPolygon LassoPolygon::create(std::vector<Point2> vertices) {
  if (vertices.size() < 3) {
    throw MalformedPolygon("a lasso polygon needs at least 3 vertices, got " +
                           std::to_string(vertices.size()));
  }
  for (const auto& v : vertices) {
    if (!std::isfinite(v[0]) || !std::isfinite(v[1])) {
      throw MalformedPolygon("polygon vertices must be finite");
    }
  }
  LassoPolygon polygon(std::move(vertices));
  if (!(polygon.area() > 0.0)) throw MalformedPolygon("polygon encloses no area");
  return polygon;
}

double LassoPolygon::area() const noexcept {
  double twice = 0.0;
  for (std::size_t i = 0, j = vertices_.size() - 1; i < vertices_.size(); j = i++) {
    twice += vertices_[j][0] * vertices_[i][1] - vertices_[i][0] * vertices_[j][1];
  }
  return 0.5 * std::abs(twice);
}

bool LassoPolygon::contains(const Point2& p) const noexcept {
  bool inside = false;
  for (std::size_t i = 0, j = vertices_.size() - 1; i < vertices_.size(); j = i++) {
    const auto& a = vertices_[j];
    const auto& b = vertices_[i];
    if (on_segment(p, a, b)) return true;
    if ((b[1] > p[1]) != (a[1] > p[1])) {
      const double x_cross = (a[0] - b[0]) * (p[1] - b[1]) / (a[1] - b[1]) + b[0];
      if (p[0] < x_cross) inside = !inside;
    }
  }
  return inside;
}

LassoPatch lasso_patch(const DensityField& base, std::span<const Point2> points,
                       const LassoPolygon& polygon) {
  LassoPatch out;
  std::vector<Point2> selected;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (polygon.contains(points[i])) {
      out.indices.push_back(i);
      selected.push_back(points[i]);
    }
  }
  out.patch = kde_on_grid(selected, base.grid_width, base.grid_height, base.bounds, base.bandwidth);
  return out;
}

std::vector<std::size_t> outlier_indices(std::span<const double> scores, double threshold) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > threshold) out.push_back(i);
  }
  return out;
}

}  // namespace paretolens::density
