#include <algorithm>
#include <vector>

#include "paretolens/density.hpp"
#include "paretolens/errors.hpp"

namespace paretolens::density {

namespace {

constexpr double kReachEpsilon = 1e-10;

struct Neighborhood {
  std::vector<std::size_t> members;
  std::vector<double> distances;
  double k_distance = 0.0;
};

}  // namespace

std::vector<double> lof_scores(const Matrix& points, std::size_t k) {
  const std::size_t n = points.rows();
  if (k < 1) throw InvalidArgument("LOF needs k >= 1");
  if (n < k + 1) throw TooFewPoints(n, k + 1);

  std::vector<Neighborhood> hoods(n);
  std::vector<double> dist(n);
  std::vector<double> scratch;
  for (std::size_t i = 0; i < n; ++i) {
    scratch.clear();
    for (std::size_t j = 0; j < n; ++j) {
      dist[j] = euclidean_distance(points.row(i), points.row(j));
      if (j != i) scratch.push_back(dist[j]);
    }
    std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(k - 1),
                     scratch.end());
    auto& hood = hoods[i];
    hood.k_distance = scratch[k - 1];
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && dist[j] <= hood.k_distance) {
        hood.members.push_back(j);
        hood.distances.push_back(dist[j]);
      }
    }
  }

  std::vector<double> lrd(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& hood = hoods[i];
    double reach = 0.0;
    for (std::size_t m = 0; m < hood.members.size(); ++m) {
      reach += std::max(hoods[hood.members[m]].k_distance, hood.distances[m]);
    }
    lrd[i] = 1.0 / (reach / static_cast<double>(hood.members.size()) + kReachEpsilon);
  }

  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& hood = hoods[i];
    double sum = 0.0;
    for (std::size_t j : hood.members) sum += lrd[j];
    scores[i] = sum / static_cast<double>(hood.members.size()) / lrd[i];
  }
  return scores;
}

std::vector<double> lof_scores(std::span<const Point2> points, std::size_t k) {
  Matrix m(points.size(), 2);
  for (std::size_t i = 0; i < points.size(); ++i) {
    m(i, 0) = points[i][0];
    m(i, 1) = points[i][1];
  }
  return lof_scores(m, k);
}

}  // namespace paretolens::density
