#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "paretolens/matrix.hpp"

namespace paretolens {

inline constexpr std::string_view kSchemaVersion = "1.0";

enum class Sense { Minimize, Maximize };

struct ProblemMeta {
  std::string problem_name = "unknown";
  std::string algorithm_name = "unknown";
  std::size_t n_decision_vars = 0;
  std::size_t n_objectives = 0;
  std::size_t n_solutions = 0;
  std::size_t n_references = 0;
  std::vector<Sense> objective_sense;  // one entry per objective

  bool operator==(const ProblemMeta&) const = default;
};

struct Solution {
  std::size_t id = 0;
  std::vector<double> decision;
  std::vector<double> objective;

  bool operator==(const Solution&) const = default;
};

struct SolutionSet {
  ProblemMeta meta;
  std::vector<Solution> solutions;

  std::size_t size() const noexcept { return solutions.size(); }
  Matrix decision_matrix() const;
  Matrix objective_matrix() const;

  bool operator==(const SolutionSet&) const = default;
};

struct ReferenceSet {
  std::vector<std::vector<double>> points;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  Matrix matrix() const;

  bool operator==(const ReferenceSet&) const = default;
};

enum class ProjectionMethod { Tsne, Umap };

std::string_view to_string(ProjectionMethod method) noexcept;

struct Layout2D {
  std::vector<Point2> decision_coords;
  std::vector<Point2> objective_coords;
  std::vector<Point2> reference_coords;
  ProjectionMethod method = ProjectionMethod::Tsne;
  std::uint64_t seed = 0;

  bool operator==(const Layout2D&) const = default;
};

struct Bounds2D {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  bool operator==(const Bounds2D&) const = default;
};

/// Raster of a 2-D density estimate. `values` is row-major with row 0 at
/// the y_min edge; cell (col, row) is centred at
/// (x_min + (col + 0.5) * cell_width, y_min + (row + 0.5) * cell_height).
struct DensityField {
  std::size_t grid_width = 0;
  std::size_t grid_height = 0;
  Bounds2D bounds;
  std::vector<double> values;
  double bandwidth = 0.0;
  std::vector<std::size_t> outlier_indices;

  double cell_width() const noexcept {
    return (bounds.x_max - bounds.x_min) / static_cast<double>(grid_width);
  }
  double cell_height() const noexcept {
    return (bounds.y_max - bounds.y_min) / static_cast<double>(grid_height);
  }
  double cell_area() const noexcept { return cell_width() * cell_height(); }
  Point2 cell_center(std::size_t col, std::size_t row) const noexcept {
    return {bounds.x_min + (static_cast<double>(col) + 0.5) * cell_width(),
            bounds.y_min + (static_cast<double>(row) + 0.5) * cell_height()};
  }
  double at(std::size_t col, std::size_t row) const noexcept {
    return values[row * grid_width + col];
  }

  bool operator==(const DensityField&) const = default;
};

struct Annotations {
  std::vector<double> nearest_ref_distance;  // empty when there are no references
  std::vector<double> nearest_sol_distance;
  std::vector<std::size_t> nearest_sol_index;
  std::vector<bool> dominated;
  std::vector<int> cluster_label;  // -1 = noise

  bool operator==(const Annotations&) const = default;
};

struct AnalysisArtifact {
  std::string schema_version{kSchemaVersion};
  SolutionSet solutions;  // carries the problem metadata
  ReferenceSet references;
  Layout2D layout;
  std::optional<DensityField> density;  // absent when there are no references
  Annotations annotations;

  const ProblemMeta& meta() const noexcept { return solutions.meta; }

  bool operator==(const AnalysisArtifact&) const = default;
};

/// Builds a meta block whose counts match the given data and whose senses
/// default to all-minimize.
ProblemMeta make_meta(std::string problem, std::string algorithm, std::size_t n_dec,
                      std::size_t n_obj, std::size_t n_solutions, std::size_t n_references);

/// Throws the specific typed error for the first violated invariant.
void validate(const SolutionSet& set);
void validate(const ReferenceSet& refs, std::size_t n_objectives);
void validate(const DensityField& field, std::size_t n_references, std::string_view path);
void validate(const AnalysisArtifact& artifact);

}  // namespace paretolens
