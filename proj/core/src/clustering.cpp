#include "paretolens/clustering.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>

#include "paretolens/errors.hpp"

namespace paretolens::clustering {

namespace {

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t into, std::size_t from) { parent_[find(from)] = find(into); }

 private:
  std::vector<std::size_t> parent_;
};

// Nodes of the linkage hierarchy under `root`, breadth first.
std::vector<std::size_t> hierarchy_bfs(const std::vector<LinkageStep>& linkage,
                                       std::size_t n_points, std::size_t root) {
  std::vector<std::size_t> out;
  std::deque<std::size_t> queue{root};
  while (!queue.empty()) {
    const std::size_t node = queue.front();
    queue.pop_front();
    out.push_back(node);
    if (node >= n_points) {
      const auto& step = linkage[node - n_points];
      queue.push_back(step.left);
      queue.push_back(step.right);
    }
  }
  return out;
}

}  // namespace

std::vector<double> core_distances(const Matrix& points, std::size_t min_samples) {
  const std::size_t n = points.rows();
  if (min_samples < 1) throw InvalidArgument("min_samples must be >= 1");
  std::vector<double> core(n, 0.0);
  if (n == 0) return core;
  const std::size_t rank = std::min(min_samples, n) - 1;
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dist[j] = euclidean_distance(points.row(i), points.row(j));
    // The point itself sits at distance 0 and counts as the first sample.
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(rank), dist.end());
    core[i] = dist[rank];
  }
  return core;
}

double mutual_reachability(const Matrix& points, const std::vector<double>& core, std::size_t a,
                           std::size_t b) {
  return std::max({core[a], core[b], euclidean_distance(points.row(a), points.row(b))});
}

std::vector<MstEdge> mst_mutual_reachability(const Matrix& points, std::size_t min_samples) {
  const std::size_t n = points.rows();
  if (n < 2) throw TooFewPoints(n, 2);
  const auto core = core_distances(points, min_samples);

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, kInf);
  std::vector<std::size_t> link(n, 0);
  std::vector<MstEdge> edges;
  edges.reserve(n - 1);

  std::size_t current = 0;
  in_tree[0] = true;
  for (std::size_t added = 1; added < n; ++added) {
    std::size_t next = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const double w = mutual_reachability(points, core, current, j);
      if (w < best[j] || (w == best[j] && current < link[j])) {
        best[j] = w;
        link[j] = current;
      }
      if (next == n || best[j] < best[next]) next = j;
    }
    in_tree[next] = true;
    edges.push_back({link[next], next, best[next]});
    current = next;
  }
  return edges;
}

std::vector<LinkageStep> single_linkage(std::vector<MstEdge> mst, std::size_t n_points) {
  std::stable_sort(mst.begin(), mst.end(),
                   [](const MstEdge& a, const MstEdge& b) { return a.weight < b.weight; });
  DisjointSet sets(n_points);
  std::vector<std::size_t> node_of(n_points);
  std::iota(node_of.begin(), node_of.end(), 0);
  std::vector<std::size_t> size_of(n_points, 1);

  std::vector<LinkageStep> linkage;
  linkage.reserve(mst.size());
  for (const auto& e : mst) {
    const std::size_t ra = sets.find(e.from);
    const std::size_t rb = sets.find(e.to);
    const std::size_t na = node_of[ra];
    const std::size_t nb = node_of[rb];
    const std::size_t merged = size_of[ra] + size_of[rb];
    linkage.push_back({std::min(na, nb), std::max(na, nb), e.weight, merged});
    sets.unite(ra, rb);
    node_of[ra] = n_points + linkage.size() - 1;
    size_of[ra] = merged;
  }
  return linkage;
}

std::vector<CondensedEdge> condense_tree(const std::vector<LinkageStep>& linkage,
                                         std::size_t n_points, std::size_t min_cluster_size) {
  std::vector<CondensedEdge> out;
  if (linkage.empty()) return out;
  const std::size_t root = n_points + linkage.size() - 1;
  const double max_lambda = std::numeric_limits<double>::max() / (4.0 * static_cast<double>(n_points));

  const auto size_of = [&](std::size_t node) {
    return node < n_points ? std::size_t{1} : linkage[node - n_points].size;
  };

  std::map<std::size_t, std::size_t> relabel;
  std::vector<bool> ignore(root + 1, false);
  std::size_t next_label = n_points + 1;
  relabel[root] = n_points;

  const auto drop_points = [&](std::size_t subtree, std::size_t parent, double lambda) {
    for (std::size_t sub : hierarchy_bfs(linkage, n_points, subtree)) {
      if (sub < n_points) out.push_back({parent, sub, lambda, 1});
      ignore[sub] = true;
    }
  };

  for (std::size_t node : hierarchy_bfs(linkage, n_points, root)) {
    if (node < n_points || ignore[node]) continue;
    const auto& step = linkage[node - n_points];
    const double lambda = step.distance > 0.0 ? std::min(1.0 / step.distance, max_lambda) : max_lambda;
    const std::size_t parent = relabel.at(node);
    const std::size_t left_size = size_of(step.left);
    const std::size_t right_size = size_of(step.right);
    const bool left_big = left_size >= min_cluster_size;
    const bool right_big = right_size >= min_cluster_size;

    if (left_big && right_big) {
      relabel[step.left] = next_label++;
      out.push_back({parent, relabel[step.left], lambda, left_size});
      relabel[step.right] = next_label++;
      out.push_back({parent, relabel[step.right], lambda, right_size});
    } else if (!left_big && !right_big) {
      drop_points(step.left, parent, lambda);
      drop_points(step.right, parent, lambda);
    } else if (!left_big) {
      relabel[step.right] = parent;
      drop_points(step.left, parent, lambda);
    } else {
      relabel[step.left] = parent;
      drop_points(step.right, parent, lambda);
    }
  }
  return out;
}

std::vector<int> extract_labels(const std::vector<CondensedEdge>& condensed,
                                std::size_t n_points) {
  std::vector<int> labels(n_points, -1);
  if (condensed.empty()) return labels;
  const std::size_t root = n_points;

  std::map<std::size_t, double> birth{{root, 0.0}};
  std::map<std::size_t, std::size_t> parent_of;
  std::map<std::size_t, std::vector<std::size_t>> children;
  for (const auto& e : condensed) {
    if (e.child >= n_points) {
      birth[e.child] = e.lambda;
      parent_of[e.child] = e.parent;
      children[e.parent].push_back(e.child);
    }
  }
  std::map<std::size_t, double> stability;
  for (const auto& [cluster, b] : birth) stability[cluster] = 0.0;
  for (const auto& e : condensed) {
    stability[e.parent] += (e.lambda - birth[e.parent]) * static_cast<double>(e.child_size);
  }

  // Children always carry larger ids than their parent, so a descending
  // sweep settles every subtree before its parent is considered.
  std::map<std::size_t, bool> selected;
  for (auto it = stability.rbegin(); it != stability.rend(); ++it) {
    const std::size_t cluster = it->first;
    if (cluster == root) continue;
    double subtree = 0.0;
    for (std::size_t c : children[cluster]) subtree += stability[c];
    if (subtree > stability[cluster]) {
      selected[cluster] = false;
      stability[cluster] = subtree;
    } else {
      selected[cluster] = true;
      std::deque<std::size_t> queue(children[cluster].begin(), children[cluster].end());
      while (!queue.empty()) {
        const std::size_t c = queue.front();
        queue.pop_front();
        selected[c] = false;
        for (std::size_t g : children[c]) queue.push_back(g);
      }
    }
  }

  std::map<std::size_t, int> label_of;
  for (const auto& [cluster, is_selected] : selected) {
    if (is_selected) label_of[cluster] = static_cast<int>(label_of.size());
  }
  for (const auto& e : condensed) {
    if (e.child >= n_points) continue;
    std::size_t c = e.parent;
    while (c != root && !selected[c]) c = parent_of.at(c);
    if (c != root) labels[e.child] = label_of.at(c);
  }
  return labels;
}

std::vector<int> hdbscan(const Matrix& points, const HdbscanConfig& config) {
  if (config.min_cluster_size < 2) throw InvalidArgument("min_cluster_size must be >= 2");
  if (config.min_samples < 1) throw InvalidArgument("min_samples must be >= 1");
  const std::size_t n = points.rows();
  if (n < config.min_cluster_size || n < 2) return std::vector<int>(n, -1);
  const auto linkage = single_linkage(mst_mutual_reachability(points, config.min_samples), n);
  return extract_labels(condense_tree(linkage, n, config.min_cluster_size), n);
}

}  // namespace paretolens::clustering
