#include "paretolens/umap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <tuple>

#include "paretolens/errors.hpp"

namespace paretolens::umap {

namespace {

constexpr double kSmoothKTolerance = 1e-5;
constexpr int kSmoothKSteps = 64;
constexpr double kMinKDistScale = 1e-3;
constexpr double kGradientClip = 4.0;

double clip(double v) { return std::clamp(v, -kGradientClip, kGradientClip); }

}  // namespace

std::pair<double, double> fit_ab(double spread, double min_dist) {
  if (!(spread > 0.0) || !(min_dist >= 0.0)) {
    throw InvalidArgument("UMAP curve fit needs spread > 0 and min_dist >= 0");
  }
  constexpr int kSamples = 300;
  std::vector<double> xs(kSamples);
  std::vector<double> ys(kSamples);
  for (int s = 0; s < kSamples; ++s) {
    xs[s] = 3.0 * spread * static_cast<double>(s) / static_cast<double>(kSamples - 1);
    ys[s] = xs[s] < min_dist ? 1.0 : std::exp(-(xs[s] - min_dist) / spread);
  }

  const auto cost_of = [&](double a, double b) {
    double c = 0.0;
    for (int s = 0; s < kSamples; ++s) {
      const double r = 1.0 / (1.0 + a * std::pow(xs[s], 2.0 * b)) - ys[s];
      c += r * r;
    }
    return c;
  };

  // Levenberg-Marquardt from (1, 1).
  double a = 1.0;
  double b = 1.0;
  double lambda = 1e-3;
  double cost = cost_of(a, b);
  for (int iter = 0; iter < 2000; ++iter) {
    double jaa = 0.0, jab = 0.0, jbb = 0.0, ga = 0.0, gb = 0.0;
    for (int s = 0; s < kSamples; ++s) {
      const double x = xs[s];
      const double x2b = x > 0.0 ? std::pow(x, 2.0 * b) : 0.0;
      const double denom = 1.0 + a * x2b;
      const double f = 1.0 / denom;
      const double r = f - ys[s];
      const double da = -x2b / (denom * denom);
      const double db = x > 0.0 ? -a * x2b * 2.0 * std::log(x) / (denom * denom) : 0.0;
      jaa += da * da;
      jab += da * db;
      jbb += db * db;
      ga += da * r;
      gb += db * r;
    }
    bool improved = false;
    while (lambda < 1e16) {
      const double m00 = jaa * (1.0 + lambda);
      const double m11 = jbb * (1.0 + lambda);
      const double det = m00 * m11 - jab * jab;
      if (det == 0.0) {
        lambda *= 10.0;
        continue;
      }
      const double step_a = -(m11 * ga - jab * gb) / det;
      const double step_b = -(m00 * gb - jab * ga) / det;
      const double na = a + step_a;
      const double nb = b + step_b;
      const double next = (na > 0.0 && nb > 0.0) ? cost_of(na, nb)
                                                  : std::numeric_limits<double>::infinity();
      if (next < cost) {
        const bool converged = cost - next <= 1e-15 * cost &&
                               std::abs(step_a) <= 1e-12 * (std::abs(a) + 1e-12) &&
                               std::abs(step_b) <= 1e-12 * (std::abs(b) + 1e-12);
        a = na;
        b = nb;
        cost = next;
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = !converged;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) break;
  }
  return {a, b};
}

Neighbors exact_knn(const Matrix& points, std::size_t k) {
  const std::size_t n = points.rows();
  if (k >= n) throw TooFewPoints(n, k + 1);
  Neighbors out;
  out.indices.resize(n);
  out.distances.resize(n);
  std::vector<std::pair<double, std::size_t>> candidates;
  candidates.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    candidates.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) candidates.emplace_back(euclidean_distance(points.row(i), points.row(j)), j);
    }
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                      candidates.end());
    for (std::size_t m = 0; m < k; ++m) {
      out.distances[i].push_back(candidates[m].first);
      out.indices[i].push_back(candidates[m].second);
    }
  }
  return out;
}

SmoothKnn smooth_knn(const Neighbors& knn, std::size_t n_neighbors) {
  const std::size_t n = knn.distances.size();
  const double target = std::log2(static_cast<double>(n_neighbors));
  SmoothKnn out{std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)};

  double mean_all = 0.0;
  std::size_t count_all = 0;
  for (const auto& row : knn.distances) {
    for (double d : row) mean_all += d;
    count_all += row.size();
  }
  mean_all /= static_cast<double>(std::max<std::size_t>(count_all, 1));

  for (std::size_t i = 0; i < n; ++i) {
    const auto& dists = knn.distances[i];
    const auto first_positive =
        std::find_if(dists.begin(), dists.end(), [](double d) { return d > 0.0; });
    const double rho = first_positive == dists.end() ? 0.0 : *first_positive;

    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    double mid = 1.0;
    for (int step = 0; step < kSmoothKSteps; ++step) {
      double psum = 0.0;
      for (double d : dists) {
        const double shifted = d - rho;
        psum += shifted > 0.0 ? std::exp(-shifted / mid) : 1.0;
      }
      if (std::abs(psum - target) < kSmoothKTolerance) break;
      if (psum > target) {
        hi = mid;
        mid = 0.5 * (lo + hi);
      } else {
        lo = mid;
        mid = std::isinf(hi) ? mid * 2.0 : 0.5 * (lo + hi);
      }
    }

    const double mean_i =
        dists.empty() ? 0.0
                      : std::accumulate(dists.begin(), dists.end(), 0.0) /
                            static_cast<double>(dists.size());
    const double floor = kMinKDistScale * (rho > 0.0 ? mean_i : mean_all);
    out.rho[i] = rho;
    out.sigma[i] = std::max(mid, floor);
  }
  return out;
}

std::vector<Edge> fuzzy_simplicial_set(const Matrix& points, std::size_t n_neighbors) {
  if (n_neighbors < 2) throw InvalidArgument("n_neighbors must be at least 2");
  const Neighbors knn = exact_knn(points, n_neighbors - 1);
  const SmoothKnn smooth = smooth_knn(knn, n_neighbors);

  // (head, tail, weight, transposed?)
  std::vector<std::tuple<std::size_t, std::size_t, double, bool>> entries;
  for (std::size_t i = 0; i < knn.indices.size(); ++i) {
    for (std::size_t m = 0; m < knn.indices[i].size(); ++m) {
      const std::size_t j = knn.indices[i][m];
      const double shifted = knn.distances[i][m] - smooth.rho[i];
      const double w =
          (shifted <= 0.0 || smooth.sigma[i] == 0.0) ? 1.0 : std::exp(-shifted / smooth.sigma[i]);
      entries.emplace_back(i, j, w, false);
      entries.emplace_back(j, i, w, true);
    }
  }
  std::sort(entries.begin(), entries.end());

  std::vector<Edge> edges;
  for (std::size_t e = 0; e < entries.size();) {
    const std::size_t head = std::get<0>(entries[e]);
    const std::size_t tail = std::get<1>(entries[e]);
    double forward = 0.0;
    double backward = 0.0;
    std::size_t f = e;
    for (; f < entries.size() && std::get<0>(entries[f]) == head && std::get<1>(entries[f]) == tail;
         ++f) {
      (std::get<3>(entries[f]) ? backward : forward) = std::get<2>(entries[f]);
    }
    const double w = forward + backward - forward * backward;
    if (w > 0.0) edges.push_back({head, tail, w});
    e = f;
  }
  return edges;
}

std::size_t effective_neighbors(std::size_t requested, std::size_t n_points) noexcept {
  return std::min(requested, n_points - 1);
}

UmapRun run(const Matrix& points, const UmapConfig& config, std::uint64_t seed) {
  const std::size_t n = points.rows();
  if (n < 4) throw TooFewPoints(n, 4);
  if (config.epochs < 1) throw InvalidArgument("UMAP needs at least one epoch");

  UmapRun result;
  result.n_neighbors = effective_neighbors(config.n_neighbors, n);
  std::tie(result.a, result.b) = fit_ab(config.spread, config.min_dist);
  const double a = result.a;
  const double b = result.b;

  auto edges = fuzzy_simplicial_set(points, result.n_neighbors);
  const double epochs = static_cast<double>(config.epochs);
  double max_w = 0.0;
  for (const auto& e : edges) max_w = std::max(max_w, e.weight);
  std::erase_if(edges, [&](const Edge& e) { return e.weight < max_w / epochs; });

  std::vector<double> epochs_per_sample(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) epochs_per_sample[e] = max_w / edges[e].weight;
  const double neg_rate = static_cast<double>(std::max(config.negative_sample_rate, 0));
  std::vector<double> epochs_per_negative(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    epochs_per_negative[e] = neg_rate > 0.0 ? epochs_per_sample[e] / neg_rate
                                            : std::numeric_limits<double>::infinity();
  }
  std::vector<double> next_sample = epochs_per_sample;
  std::vector<double> next_negative = epochs_per_negative;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> init(0.0, 10.0);
  Matrix y(n, 2);
  for (double& v : y.data()) v = init(rng);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);

  const double gamma = config.repulsion_strength;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const double alpha =
        config.learning_rate * (1.0 - static_cast<double>(epoch) / epochs);
    const double now = static_cast<double>(epoch);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (next_sample[e] > now) continue;
      const std::size_t j = edges[e].head;
      const std::size_t k = edges[e].tail;
      auto current = y.row(j);
      auto other = y.row(k);

      const double d2 = squared_distance(current, other);
      double coeff = 0.0;
      if (d2 > 0.0) coeff = -2.0 * a * b * std::pow(d2, b - 1.0) / (a * std::pow(d2, b) + 1.0);
      for (std::size_t d = 0; d < 2; ++d) {
        const double g = clip(coeff * (current[d] - other[d]));
        current[d] += g * alpha;
        other[d] -= g * alpha;
      }
      next_sample[e] += epochs_per_sample[e];

      const long n_neg =
          neg_rate > 0.0 ? static_cast<long>((now - next_negative[e]) / epochs_per_negative[e]) : 0;
      for (long s = 0; s < n_neg; ++s) {
        const std::size_t m = pick(rng);
        if (m == j) continue;
        const auto negative = y.row(m);
        const double nd2 = squared_distance(current, negative);
        double rcoeff = 0.0;
        if (nd2 > 0.0) rcoeff = 2.0 * gamma * b / ((0.001 + nd2) * (a * std::pow(nd2, b) + 1.0));
        for (std::size_t d = 0; d < 2; ++d) {
          const double g = rcoeff > 0.0 ? clip(rcoeff * (current[d] - negative[d])) : 0.0;
          current[d] += g * alpha;
        }
      }
      if (n_neg > 0) next_negative[e] += static_cast<double>(n_neg) * epochs_per_negative[e];
    }
  }
  result.embedding = std::move(y);
  return result;
}

}  // namespace paretolens::umap
