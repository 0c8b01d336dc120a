#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "paretolens/matrix.hpp"

namespace paretolens::umap {

struct UmapConfig {
  /// Neighbourhood size, counting the point itself.
  std::size_t n_neighbors = 15;
  double min_dist = 0.1;
  int epochs = 500;
  double spread = 1.0;
  double learning_rate = 1.0;
  int negative_sample_rate = 5;
  double repulsion_strength = 1.0;
};

/// Least-squares fit of 1 / (1 + a d^(2b)) to the min_dist/spread target
/// curve. Returns (a, b).
std::pair<double, double> fit_ab(double spread, double min_dist);

struct Neighbors {
  std::vector<std::vector<std::size_t>> indices;  // excludes the point itself
  std::vector<std::vector<double>> distances;     // ascending
};

/// Exact k nearest neighbours (ties by smaller index).
Neighbors exact_knn(const Matrix& points, std::size_t k);

struct SmoothKnn {
  std::vector<double> rho;
  std::vector<double> sigma;
};

/// Per-point rho (distance to the nearest non-identical neighbour) and
/// sigma such that sum_j exp(-max(0, d_j - rho) / sigma) = log2(n_neighbors).
SmoothKnn smooth_knn(const Neighbors& knn, std::size_t n_neighbors);

struct Edge {
  std::size_t head = 0;
  std::size_t tail = 0;
  double weight = 0.0;
};

/// Fuzzy union of the directed membership graph, w = a + b - a*b. Both
/// directions of each pair are listed, sorted by (head, tail).
std::vector<Edge> fuzzy_simplicial_set(const Matrix& points, std::size_t n_neighbors);

/// n_neighbors actually used for K points: min(requested, K - 1).
std::size_t effective_neighbors(std::size_t requested, std::size_t n_points) noexcept;

struct UmapRun {
  Matrix embedding;  // K x 2
  std::size_t n_neighbors = 0;
  double a = 0.0;
  double b = 0.0;
};

/// Full UMAP with seeded uniform random initialisation.
UmapRun run(const Matrix& points, const UmapConfig& config, std::uint64_t seed);

}  // namespace paretolens::umap
