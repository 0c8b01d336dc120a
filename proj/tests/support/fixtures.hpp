#pragma once

// Test-only generators and brute-force oracles. Nothing here calls into the
// library's algorithms, so results can be compared against it directly.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "paretolens/matrix.hpp"
#include "paretolens/model.hpp"

#include <unistd.h>

namespace fixtures {

using paretolens::Matrix;
using paretolens::Point2;

inline Matrix uniform_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo = 0.0,
                             double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (double& v : m.data()) v = u(rng);
  return m;
}

struct Blobs {
  Matrix points;
  std::vector<int> labels;
};

/// `count` isotropic unit-sigma Gaussian blobs of `per_blob` points in `dim`
/// dimensions. Centres sit on scaled unit axes so that every pair of
/// centres is exactly `separation` sigmas apart (requires dim >= count).
inline Blobs gaussian_blobs(std::size_t count, std::size_t per_blob, std::size_t dim,
                            double separation, std::uint64_t seed, double sigma = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, sigma);
  Blobs b{Matrix(count * per_blob, dim), {}};
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t i = 0; i < per_blob; ++i) {
      const std::size_t r = c * per_blob + i;
      for (std::size_t d = 0; d < dim; ++d) {
        b.points(r, d) = g(rng) + (d == c % dim ? separation * sigma / std::sqrt(2.0) : 0.0);
      }
      b.labels.push_back(static_cast<int>(c));
    }
  }
  return b;
}

/// Fraction of (point, neighbour) pairs among each point's k nearest
/// neighbours in `embedding` that share the point's label.
inline double knn_purity(const Matrix& embedding, const std::vector<int>& labels, std::size_t k) {
  const std::size_t n = embedding.rows();
  std::size_t agree = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<double, std::size_t>> d;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double s = 0.0;
      for (std::size_t c = 0; c < embedding.cols(); ++c) {
        const double diff = embedding(i, c) - embedding(j, c);
        s += diff * diff;
      }
      d.emplace_back(s, j);
    }
    std::sort(d.begin(), d.end());
    for (std::size_t m = 0; m < k; ++m) agree += labels[d[m].second] == labels[i];
  }
  return static_cast<double>(agree) / static_cast<double>(n * k);
}

inline double dist(const Matrix& m, std::size_t a, std::size_t b) {
  double s = 0.0;
  for (std::size_t c = 0; c < m.cols(); ++c) s += (m(a, c) - m(b, c)) * (m(a, c) - m(b, c));
  return std::sqrt(s);
}

/// Sorted list of all pairwise distances.
inline std::vector<double> pairwise_distances(const Matrix& m) {
  std::vector<double> out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.rows(); ++j) out.push_back(dist(m, i, j));
  std::sort(out.begin(), out.end());
  return out;
}

/// True when d(a, b) is within the smallest `fraction` of all pairwise
/// output distances.
inline bool within_closest_fraction(const Matrix& m, std::size_t a, std::size_t b,
                                    double fraction) {
  const auto all = pairwise_distances(m);
  const auto cutoff_rank = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(all.size())));
  return dist(m, a, b) <= all[std::max<std::size_t>(cutoff_rank, 1) - 1];
}

// Definitional dominance, all objectives minimised.
inline bool brute_dominates(std::span<const double> a, std::span<const double> b) {
  bool strictly = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly = true;
  }
  return strictly;
}

inline std::vector<bool> brute_dominated(const Matrix& obj) {
  std::vector<bool> out(obj.rows(), false);
  for (std::size_t i = 0; i < obj.rows(); ++i)
    for (std::size_t j = 0; j < obj.rows(); ++j)
      if (j != i && brute_dominates(obj.row(j), obj.row(i))) out[i] = true;
  return out;
}

/// LOF straight from Breunig et al.: full sort per point, neighbourhood
/// includes every point within the k-distance, lrd with the same 1e-10
/// guard the library documents.
inline std::vector<double> brute_lof(const Matrix& pts, std::size_t k) {
  const std::size_t n = pts.rows();
  std::vector<double> kdist(n);
  std::vector<std::vector<std::size_t>> hood(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> d;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) d.push_back(dist(pts, i, j));
    std::sort(d.begin(), d.end());
    kdist[i] = d[k - 1];
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && dist(pts, i, j) <= kdist[i]) hood[i].push_back(j);
  }
  std::vector<double> lrd(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j : hood[i]) s += std::max(kdist[j], dist(pts, i, j));
    lrd[i] = 1.0 / (s / static_cast<double>(hood[i].size()) + 1e-10);
  }
  std::vector<double> lof(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j : hood[i]) s += lrd[j] / lrd[i];
    lof[i] = s / static_cast<double>(hood[i].size());
  }
  return lof;
}

/// Kruskal over the full mutual-reachability edge list; returns total weight.
inline double kruskal_mreach_weight(const Matrix& pts, std::size_t min_samples) {
  const std::size_t n = pts.rows();
  std::vector<double> core(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> d;
    for (std::size_t j = 0; j < n; ++j) d.push_back(dist(pts, i, j));
    std::sort(d.begin(), d.end());
    core[i] = d[std::min(min_samples, n) - 1];
  }
  struct E {
    double w;
    std::size_t a, b;
  };
  std::vector<E> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      edges.push_back({std::max({core[i], core[j], dist(pts, i, j)}), i, j});
  std::sort(edges.begin(), edges.end(), [](const E& x, const E& y) { return x.w < y.w; });
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  double total = 0.0;
  for (const auto& e : edges) {
    const auto ra = find(e.a), rb = find(e.b);
    if (ra == rb) continue;
    parent[ra] = rb;
    total += e.w;
  }
  return total;
}

/// Crossing-number test written independently of the library, with an
/// explicit on-segment check so boundary points count as inside.
inline bool brute_inside(const std::vector<Point2>& poly, Point2 p) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % n];
    const double cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
    if (std::abs(cross) <= 1e-12 && p[0] >= std::min(a[0], b[0]) - 1e-12 &&
        p[0] <= std::max(a[0], b[0]) + 1e-12 && p[1] >= std::min(a[1], b[1]) - 1e-12 &&
        p[1] <= std::max(a[1], b[1]) + 1e-12)
      return true;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if ((a[1] > p[1]) != (b[1] > p[1]) &&
        p[0] < (b[0] - a[0]) * (p[1] - a[1]) / (b[1] - a[1]) + a[0])
      inside = !inside;
  }
  return inside;
}

/// Fraction of points whose predicted label matches the best one-to-one
/// relabelling of the truth (greedy on the contingency table, exact for the
/// small cluster counts used in tests).
inline double partition_agreement(const std::vector<int>& truth, const std::vector<int>& predicted) {
  int max_t = 0, max_p = -1;
  for (int t : truth) max_t = std::max(max_t, t);
  for (int p : predicted) max_p = std::max(max_p, p);
  if (max_p < 0) return 0.0;
  std::vector<std::vector<std::size_t>> table(max_t + 1, std::vector<std::size_t>(max_p + 1, 0));
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (predicted[i] >= 0) ++table[truth[i]][predicted[i]];
  std::vector<int> perm(max_p + 1);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = 0;
  // Try every assignment of predicted clusters to truth labels.
  do {
    std::size_t hit = 0;
    for (int p = 0; p <= max_p; ++p)
      if (perm[p] <= max_t) hit += table[perm[p]][p];
    best = std::max(best, hit);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(truth.size());
}

inline std::size_t cluster_count(const std::vector<int>& labels) {
  int m = -1;
  for (int l : labels) m = std::max(m, l);
  return static_cast<std::size_t>(m + 1);
}

/// A structurally valid artifact with random contents.
inline paretolens::AnalysisArtifact random_artifact(std::uint64_t seed) {
  using namespace paretolens;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> small(0, 12);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::normal_distribution<double> g(0.0, 1.0);
  const std::size_t n_dec = 1 + small(rng) % 6;
  const std::size_t m = 2 + small(rng) % 4;
  const std::size_t n = small(rng) + 1;
  const std::size_t r = small(rng) % 3 == 0 ? 0 : small(rng) + 1;
  // Mix magnitudes so the float formatting is exercised.
  auto value = [&] {
    const double scale = std::pow(10.0, std::uniform_int_distribution<int>(-12, 12)(rng));
    return g(rng) * scale;
  };

  AnalysisArtifact a;
  a.solutions.meta = make_meta("prob-" + std::to_string(seed), "alg \"q\" é", n_dec, m, n, r);
  for (std::size_t j = 0; j < m; ++j) {
    a.solutions.meta.objective_sense[j] = rng() % 2 ? Sense::Maximize : Sense::Minimize;
  }
  for (std::size_t i = 0; i < n; ++i) {
    Solution s{i, {}, {}};
    for (std::size_t d = 0; d < n_dec; ++d) s.decision.push_back(value());
    for (std::size_t d = 0; d < m; ++d) s.objective.push_back(value());
    a.solutions.solutions.push_back(std::move(s));
  }
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<double> p;
    for (std::size_t d = 0; d < m; ++d) p.push_back(value());
    a.references.points.push_back(std::move(p));
  }
  a.layout.method = rng() % 2 ? ProjectionMethod::Umap : ProjectionMethod::Tsne;
  a.layout.seed = rng();
  for (std::size_t i = 0; i < n; ++i) {
    a.layout.decision_coords.push_back({u(rng), u(rng)});
    a.layout.objective_coords.push_back({u(rng), u(rng)});
  }
  for (std::size_t j = 0; j < r; ++j) a.layout.reference_coords.push_back({u(rng), u(rng)});
  if (r > 0) {
    DensityField f;
    f.grid_width = 1 + small(rng);
    f.grid_height = 1 + small(rng);
    f.bounds = {-1.5, 2.25, -0.125, 3.0};
    f.bandwidth = std::abs(value()) + 1e-3;
    for (std::size_t c = 0; c < f.grid_width * f.grid_height; ++c) f.values.push_back(std::abs(value()));
    for (std::size_t j = 0; j < r; ++j)
      if (rng() % 4 == 0) f.outlier_indices.push_back(j);
    a.density = f;
    for (std::size_t i = 0; i < n; ++i) a.annotations.nearest_ref_distance.push_back(std::abs(value()));
  }
  if (n >= 2) {
    for (std::size_t i = 0; i < n; ++i) {
      a.annotations.nearest_sol_distance.push_back(std::abs(value()));
      a.annotations.nearest_sol_index.push_back((i + 1 + rng() % (n - 1)) % n);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    a.annotations.dominated.push_back(rng() % 2);
    a.annotations.cluster_label.push_back(static_cast<int>(rng() % 4) - 1);
  }
  return a;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("paretolens-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name, const std::string& contents) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << contents;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string csv(const Matrix& m) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      out += (j ? "," : "") + std::string(buf);
    }
    out += "\n";
  }
  return out;
}

/// DTLZ3-shaped data near convergence: N solutions with n decision
/// variables and m objectives, plus R points on the true front (the
/// positive unit-sphere orthant).
struct Dtlz {
  Matrix decision, objective, reference;
};

inline Dtlz dtlz3_like(std::size_t n_solutions, std::size_t n_dec, std::size_t m,
                       std::size_t n_refs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 0.02);
  const double pi = std::acos(-1.0);
  const std::size_t k = n_dec - m + 1;

  auto sphere = [&](const std::vector<double>& x, double g) {
    std::vector<double> f(m, 1.0 + g);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j + i + 1 < m; ++j) f[i] *= std::cos(x[j] * pi / 2);
      if (i > 0) f[i] *= std::sin(x[m - i - 1] * pi / 2);
    }
    return f;
  };

  Dtlz d{Matrix(n_solutions, n_dec), Matrix(n_solutions, m), Matrix(n_refs, m)};
  for (std::size_t s = 0; s < n_solutions; ++s) {
    std::vector<double> x(n_dec);
    for (std::size_t j = 0; j < m - 1; ++j) x[j] = u(rng);
    for (std::size_t j = m - 1; j < n_dec; ++j) x[j] = std::clamp(0.5 + noise(rng), 0.0, 1.0);
    double g = 0.0;
    for (std::size_t j = m - 1; j < n_dec; ++j) {
      const double z = x[j] - 0.5;
      g += z * z - std::cos(20 * pi * z);
    }
    g = 100.0 * (static_cast<double>(k) + g);
    const auto f = sphere(x, g);
    for (std::size_t j = 0; j < n_dec; ++j) d.decision(s, j) = x[j];
    for (std::size_t j = 0; j < m; ++j) d.objective(s, j) = f[j];
  }
  for (std::size_t r = 0; r < n_refs; ++r) {
    std::vector<double> x(m - 1);
    for (auto& v : x) v = u(rng);
    const auto f = sphere(x, 0.0);
    for (std::size_t j = 0; j < m; ++j) d.reference(r, j) = f[j];
  }
  return d;
}

}  // namespace fixtures
