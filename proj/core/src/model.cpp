#include "paretolens/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "paretolens/errors.hpp"

namespace paretolens {

namespace {

void require_finite(std::span<const double> values, const std::string& path) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) throw NonFiniteValue(path + "[" + std::to_string(k) + "]");
  }
}

void require_count(const std::string& path, std::size_t expected, std::size_t got) {
  if (expected != got) throw DimensionMismatch(path, expected, got);
}

void require_finite_points(const std::vector<Point2>& points, const std::string& path) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_finite(points[i], path + "[" + std::to_string(i) + "]");
  }
}

}  // namespace

std::string_view to_string(ProjectionMethod method) noexcept {
  return method == ProjectionMethod::Tsne ? "tsne" : "umap";
}

Matrix SolutionSet::decision_matrix() const {
  Matrix m(solutions.size(), meta.n_decision_vars);
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    std::copy(solutions[i].decision.begin(), solutions[i].decision.end(), m.row(i).begin());
  }
  return m;
}

Matrix SolutionSet::objective_matrix() const {
  Matrix m(solutions.size(), meta.n_objectives);
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    std::copy(solutions[i].objective.begin(), solutions[i].objective.end(), m.row(i).begin());
  }
  return m;
}

Matrix ReferenceSet::matrix() const { return Matrix::from_rows(points); }

ProblemMeta make_meta(std::string problem, std::string algorithm, std::size_t n_dec,
                      std::size_t n_obj, std::size_t n_solutions, std::size_t n_references) {
  ProblemMeta meta;
  meta.problem_name = std::move(problem);
  meta.algorithm_name = std::move(algorithm);
  meta.n_decision_vars = n_dec;
  meta.n_objectives = n_obj;
  meta.n_solutions = n_solutions;
  meta.n_references = n_references;
  meta.objective_sense.assign(n_obj, Sense::Minimize);
  return meta;
}

void validate(const SolutionSet& set) {
  const auto& meta = set.meta;
  if (meta.n_decision_vars < 1) throw SchemaViolation("meta.n_dec", "must be >= 1");
  if (meta.n_objectives < 2) throw SchemaViolation("meta.n_obj", "must be >= 2");
  require_count("meta.sense", meta.n_objectives, meta.objective_sense.size());
  require_count("meta.n_solutions", meta.n_solutions, set.solutions.size());
  for (std::size_t i = 0; i < set.solutions.size(); ++i) {
    const auto& s = set.solutions[i];
    const std::string path = "solutions[" + std::to_string(i) + "]";
    if (s.id != i) throw SchemaViolation(path + ".id", "ids must be 0..N-1 in order");
    require_count(path + ".dec", meta.n_decision_vars, s.decision.size());
    require_count(path + ".obj", meta.n_objectives, s.objective.size());
    require_finite(s.decision, path + ".dec");
    require_finite(s.objective, path + ".obj");
  }
}

void validate(const ReferenceSet& refs, std::size_t n_objectives) {
  for (std::size_t j = 0; j < refs.points.size(); ++j) {
    const std::string path = "references[" + std::to_string(j) + "]";
    require_count(path, n_objectives, refs.points[j].size());
    require_finite(refs.points[j], path);
  }
}

void validate(const DensityField& field, std::size_t n_references, std::string_view path) {
  const std::string base(path);
  if (field.grid_width < 1) throw SchemaViolation(base + ".w", "must be >= 1");
  if (field.grid_height < 1) throw SchemaViolation(base + ".h", "must be >= 1");
  const auto& b = field.bounds;
  require_finite(std::vector<double>{b.x_min, b.x_max, b.y_min, b.y_max}, base + ".bounds");
  if (!(b.x_max > b.x_min) || !(b.y_max > b.y_min)) {
    throw SchemaViolation(base + ".bounds", "must satisfy x_min < x_max and y_min < y_max");
  }
  if (!std::isfinite(field.bandwidth)) throw NonFiniteValue(base + ".bandwidth");
  if (!(field.bandwidth > 0.0)) throw SchemaViolation(base + ".bandwidth", "must be positive");
  require_count(base + ".values", field.grid_width * field.grid_height, field.values.size());
  require_finite(field.values, base + ".values");
  for (std::size_t k = 0; k < field.values.size(); ++k) {
    if (field.values[k] < 0.0) {
      throw SchemaViolation(base + ".values[" + std::to_string(k) + "]", "must be >= 0");
    }
  }
  for (std::size_t k = 0; k < field.outlier_indices.size(); ++k) {
    if (field.outlier_indices[k] >= n_references) {
      throw SchemaViolation(base + ".outliers[" + std::to_string(k) + "]",
                            "index out of range of the reference set");
    }
  }
}

void validate(const AnalysisArtifact& a) {
  if (a.schema_version.empty() || a.schema_version.substr(0, a.schema_version.find('.')) !=
                                      kSchemaVersion.substr(0, kSchemaVersion.find('.'))) {
    throw SchemaViolation("schema_version", "unsupported version '" + a.schema_version + "'");
  }
  validate(a.solutions);
  const auto& meta = a.meta();
  const std::size_t n = a.solutions.size();
  const std::size_t r = a.references.size();
  require_count("meta.n_references", meta.n_references, r);
  validate(a.references, meta.n_objectives);

  require_count("layout.decision", n, a.layout.decision_coords.size());
  require_count("layout.objective", n, a.layout.objective_coords.size());
  require_count("layout.reference", r, a.layout.reference_coords.size());
  require_finite_points(a.layout.decision_coords, "layout.decision");
  require_finite_points(a.layout.objective_coords, "layout.objective");
  require_finite_points(a.layout.reference_coords, "layout.reference");

  if (a.density) {
    if (r == 0) throw SchemaViolation("density", "must be null when there are no references");
    validate(*a.density, r, "density");
  } else if (r > 0) {
    throw SchemaViolation("density", "required when references are present");
  }

  const auto& ann = a.annotations;
  require_count("annotations.nearest_ref_dist", r == 0 ? 0 : n, ann.nearest_ref_distance.size());
  require_finite(ann.nearest_ref_distance, "annotations.nearest_ref_dist");
  const std::size_t nn_count = n >= 2 ? n : 0;
  require_count("annotations.nearest_sol_dist", nn_count, ann.nearest_sol_distance.size());
  require_count("annotations.nearest_sol_idx", nn_count, ann.nearest_sol_index.size());
  require_finite(ann.nearest_sol_distance, "annotations.nearest_sol_dist");
  for (std::size_t i = 0; i < ann.nearest_ref_distance.size(); ++i) {
    if (ann.nearest_ref_distance[i] < 0.0) {
      throw SchemaViolation("annotations.nearest_ref_dist[" + std::to_string(i) + "]",
                            "must be >= 0");
    }
  }
  for (std::size_t i = 0; i < nn_count; ++i) {
    const std::string path = "annotations.nearest_sol_idx[" + std::to_string(i) + "]";
    if (ann.nearest_sol_distance[i] < 0.0) {
      throw SchemaViolation("annotations.nearest_sol_dist[" + std::to_string(i) + "]",
                            "must be >= 0");
    }
    if (ann.nearest_sol_index[i] >= n) throw SchemaViolation(path, "index out of range");
    if (ann.nearest_sol_index[i] == i) throw SchemaViolation(path, "must not point at itself");
  }
  require_count("annotations.dominated", n, ann.dominated.size());
  require_count("annotations.cluster", n, ann.cluster_label.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (ann.cluster_label[i] < -1) {
      throw SchemaViolation("annotations.cluster[" + std::to_string(i) + "]", "must be >= -1");
    }
  }
}

}  // namespace paretolens
