#include "paretolens/projection.hpp"

#include <cmath>

#include "paretolens/errors.hpp"

namespace paretolens::projection {

ProjectionResult project(const Matrix& vectors, const ProjectionConfig& config) {
  if (vectors.rows() < 4) throw TooFewPoints(vectors.rows(), 4);
  if (vectors.cols() < 1) throw InvalidArgument("projection input needs at least one column");
  for (std::size_t r = 0; r < vectors.rows(); ++r) {
    for (std::size_t c = 0; c < vectors.cols(); ++c) {
      if (!std::isfinite(vectors(r, c))) throw NonFiniteInput(r, c);
    }
  }

  ProjectionResult result;
  result.method = config.method;
  if (config.method == ProjectionMethod::Tsne) {
    auto run = tsne::run(vectors, config.tsne, config.seed);
    result.embedding = std::move(run.embedding);
    result.kl_trace = std::move(run.kl_trace);
    result.kl_iterations = std::move(run.kl_iterations);
    result.perplexity = run.perplexity;
  } else {
    auto run = umap::run(vectors, config.umap, config.seed);
    result.embedding = std::move(run.embedding);
    result.n_neighbors = run.n_neighbors;
  }
  return result;
}

const std::vector<double>& tsne_kl_trace(const ProjectionResult& run) {
  if (run.method != ProjectionMethod::Tsne) {
    throw MethodMismatch("KL trace is only recorded for t-SNE runs");
  }
  return run.kl_trace;
}

ObjectiveLayout project_objective_space(const SolutionSet& set, const ReferenceSet& refs,
                                        const metrics::NormalizationSpec& spec,
                                        const ProjectionConfig& config) {
  const Matrix solutions = metrics::normalize(set.objective_matrix(), spec);
  const Matrix references = refs.empty() ? Matrix{} : metrics::normalize(refs.matrix(), spec);
  ObjectiveLayout out;
  out.run = project(Matrix::vstack(solutions, references), config);
  out.solutions = to_points(out.run.embedding.slice_rows(0, solutions.rows()));
  out.references =
      to_points(out.run.embedding.slice_rows(solutions.rows(), references.rows()));
  return out;
}

ProjectionResult project_decision_space(const SolutionSet& set, const ProjectionConfig& config) {
  const Matrix decision = set.decision_matrix();
  return project(metrics::normalize(decision, metrics::NormalizationSpec::fit(decision)), config);
}

}  // namespace paretolens::projection
