#pragma once

#include <cstdint>
#include <vector>

#include "paretolens/matrix.hpp"
#include "paretolens/metrics.hpp"
#include "paretolens/model.hpp"
#include "paretolens/tsne.hpp"
#include "paretolens/umap.hpp"

namespace paretolens::projection {

struct ProjectionConfig {
  ProjectionMethod method = ProjectionMethod::Tsne;
  std::uint64_t seed = 0;
  tsne::TsneConfig tsne;
  umap::UmapConfig umap;
};

/// A completed projection run. Coordinates are K x 2.
struct ProjectionResult {
  ProjectionMethod method = ProjectionMethod::Tsne;
  Matrix embedding;
  std::vector<double> kl_trace;    // t-SNE only
  std::vector<int> kl_iterations;  // t-SNE only
  double perplexity = 0.0;         // t-SNE: value after clamping
  std::size_t n_neighbors = 0;     // UMAP: value after clamping
};

/// Embeds the rows of `vectors` into the plane. Deterministic for a fixed
/// seed. Throws TooFewPoints (K < 4) or NonFiniteInput.
ProjectionResult project(const Matrix& vectors, const ProjectionConfig& config);

/// KL divergence samples of a t-SNE run; throws MethodMismatch for UMAP.
const std::vector<double>& tsne_kl_trace(const ProjectionResult& run);

struct ObjectiveLayout {
  std::vector<Point2> solutions;
  std::vector<Point2> references;
  ProjectionResult run;
};

/// One joint embedding of the normalised solution objectives stacked over
/// the normalised reference points, split back into the two blocks.
ObjectiveLayout project_objective_space(const SolutionSet& set, const ReferenceSet& refs,
                                        const metrics::NormalizationSpec& spec,
                                        const ProjectionConfig& config);

/// Decision vectors normalised per column over the solutions, then embedded.
ProjectionResult project_decision_space(const SolutionSet& set, const ProjectionConfig& config);

}  // namespace paretolens::projection
