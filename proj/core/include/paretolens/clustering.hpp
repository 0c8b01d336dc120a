#pragma once

#include <cstddef>
#include <vector>

#include "paretolens/matrix.hpp"

namespace paretolens::clustering {

struct HdbscanConfig {
  std::size_t min_cluster_size = 10;
  std::size_t min_samples = 2;
};

struct MstEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  double weight = 0.0;
};

/// Distance to the `min_samples`-th nearest point, counting the point
/// itself (so min_samples = 1 gives 0). Coincident points count with
/// their multiplicity.
std::vector<double> core_distances(const Matrix& points, std::size_t min_samples);

/// max(core(a), core(b), d(a, b)).
double mutual_reachability(const Matrix& points, const std::vector<double>& core, std::size_t a,
                           std::size_t b);

/// Prim's algorithm over the complete mutual-reachability graph. Edges are
/// returned in the order they join the tree; equal weights go to the
/// smaller vertex index. Throws TooFewPoints for fewer than 2 points.
std::vector<MstEdge> mst_mutual_reachability(const Matrix& points, std::size_t min_samples);

/// One merge of the single-linkage dendrogram. Nodes below N are points;
/// node N + m is the cluster created by merge m.
struct LinkageStep {
  std::size_t left = 0;
  std::size_t right = 0;
  double distance = 0.0;
  std::size_t size = 0;
};

std::vector<LinkageStep> single_linkage(std::vector<MstEdge> mst, std::size_t n_points);

/// Row of the condensed tree: `child` is a point (< N) or a cluster id
/// (>= N); lambda = 1 / distance at which it left `parent`.
struct CondensedEdge {
  std::size_t parent = 0;
  std::size_t child = 0;
  double lambda = 0.0;
  std::size_t child_size = 0;
};

std::vector<CondensedEdge> condense_tree(const std::vector<LinkageStep>& linkage,
                                         std::size_t n_points, std::size_t min_cluster_size);

/// Flat labels by excess-of-mass stability; -1 marks noise. The root
/// cluster is never selected.
std::vector<int> extract_labels(const std::vector<CondensedEdge>& condensed, std::size_t n_points);

/// Full HDBSCAN pipeline; inputs with fewer than min_cluster_size points
/// are all noise.
std::vector<int> hdbscan(const Matrix& points, const HdbscanConfig& config = {});

}  // namespace paretolens::clustering
