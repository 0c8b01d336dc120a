#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "paretolens/matrix.hpp"
#include "paretolens/model.hpp"

namespace paretolens::density {

struct KdeConfig {
  std::size_t grid_width = 256;
  std::size_t grid_height = 256;
  std::optional<double> bandwidth;  // nullopt selects Scott's rule
  double margin = 0.1;              // fraction of the extent added on each side
};

/// Scott's rule in two dimensions: R^(-1/6) times the mean of the per-axis
/// sample standard deviations. Falls back to 1 when the points have no spread.
double scott_bandwidth(std::span<const Point2> points);

/// Bounding box of `points` widened by `margin` times the extent on each
/// side. An axis with zero extent is widened by 3 * bandwidth instead.
Bounds2D padded_bounds(std::span<const Point2> points, double margin, double bandwidth);

/// Gaussian KDE evaluated at cell centres of a fixed grid:
/// value = 1 / (R 2 pi h^2) * sum_j exp(-|c - p_j|^2 / (2 h^2)).
/// An empty point set yields an all-zero field.
DensityField kde_on_grid(std::span<const Point2> points, std::size_t grid_width,
                         std::size_t grid_height, const Bounds2D& bounds, double bandwidth);

/// Density map over `points` with automatic bounds. Throws EmptyPoints.
DensityField kde_field(std::span<const Point2> points, const KdeConfig& config = {});

/// Closed polygon in layout coordinates (the last vertex connects to the first).
class LassoPolygon {
 public:
  /// Throws MalformedPolygon for fewer than 3 vertices, non-finite
  /// coordinates or zero enclosed area.
  static LassoPolygon create(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const noexcept { return vertices_; }
  double area() const noexcept;

  /// Even-odd rule; points on an edge or vertex count as inside.
  bool contains(const Point2& p) const noexcept;

 private:
  explicit LassoPolygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {}
  std::vector<Point2> vertices_;
};

struct LassoPatch {
  std::vector<std::size_t> indices;
  DensityField patch;  // same grid, bounds and bandwidth as the base field
};

/// KDE over only the points inside `polygon`, evaluated on the base grid.
LassoPatch lasso_patch(const DensityField& base, std::span<const Point2> points,
                       const LassoPolygon& polygon);

inline constexpr std::size_t kDefaultLofNeighbors = 10;
inline constexpr double kDefaultOutlierThreshold = 1.5;

/// Local outlier factor. The k-neighbourhood of a point holds every other
/// point within its k-distance, so ties at the k-th distance are all
/// included. Local reachability density is 1 / (mean reach-dist + 1e-10),
/// which keeps coincident points finite. Throws TooFewPoints when R < k + 1.
std::vector<double> lof_scores(const Matrix& points, std::size_t k = kDefaultLofNeighbors);
std::vector<double> lof_scores(std::span<const Point2> points,
                               std::size_t k = kDefaultLofNeighbors);

/// Ascending indices with score > threshold.
std::vector<std::size_t> outlier_indices(std::span<const double> scores,
                                         double threshold = kDefaultOutlierThreshold);

}  // namespace paretolens::density
