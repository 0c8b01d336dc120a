#include "paretolens/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "paretolens/errors.hpp"

namespace paretolens::metrics {

namespace {

void widen(const Matrix& data, std::vector<double>& lo, std::vector<double>& hi) {
  for (std::size_t r = 0; r < data.rows(); ++r) {
    for (std::size_t c = 0; c < data.cols(); ++c) {
      lo[c] = std::min(lo[c], data(r, c));
      hi[c] = std::max(hi[c], data(r, c));
    }
  }
}

}  // namespace

NormalizationSpec NormalizationSpec::fit(const Matrix& data) { return fit_joint(data, Matrix{}); }

NormalizationSpec NormalizationSpec::fit_joint(const Matrix& first, const Matrix& second) {
  const std::size_t cols = first.empty() ? second.cols() : first.cols();
  if (!first.empty() && !second.empty() && second.cols() != cols) {
    throw DimensionMismatch("normalization columns", cols, second.cols());
  }
  if (first.empty() && second.empty()) throw EmptyInput("no rows to fit normalization bounds");
  std::vector<double> lo(cols, std::numeric_limits<double>::infinity());
  std::vector<double> hi(cols, -std::numeric_limits<double>::infinity());
  widen(first, lo, hi);
  widen(second, lo, hi);
  return with_bounds(std::move(lo), std::move(hi));
}

NormalizationSpec NormalizationSpec::with_bounds(std::vector<double> lo, std::vector<double> hi) {
  if (lo.size() != hi.size()) throw DimensionMismatch("normalization bounds", lo.size(), hi.size());
  for (std::size_t c = 0; c < lo.size(); ++c) {
    if (!(hi[c] >= lo[c])) {
      throw InvalidArgument("normalization bound hi < lo in column " + std::to_string(c));
    }
  }
  return {NormalizationMode::MinMaxJoint, std::move(lo), std::move(hi)};
}

Matrix normalize(const Matrix& vectors, const NormalizationSpec& spec) {
  if (spec.mode == NormalizationMode::None) return vectors;
  if (vectors.cols() != spec.lo.size() && !vectors.empty()) {
    throw DimensionMismatch("normalize columns", spec.lo.size(), vectors.cols());
  }
  Matrix out(vectors.rows(), vectors.cols());
  for (std::size_t c = 0; c < vectors.cols(); ++c) {
    const double lo = spec.lo[c];
    const double span = spec.hi[c] - spec.lo[c];
    for (std::size_t r = 0; r < vectors.rows(); ++r) {
      out(r, c) = span > 0.0 ? (vectors(r, c) - lo) / span : 0.5;
    }
  }
  return out;
}

std::vector<double> nearest_reference_distances(const Matrix& solutions, const Matrix& references,
                                                const NormalizationSpec& spec) {
  if (references.empty()) throw EmptyReferenceSet();
  if (!solutions.empty() && solutions.cols() != references.cols()) {
    throw DimensionMismatch("reference columns", solutions.cols(), references.cols());
  }
  const Matrix sol = normalize(solutions, spec);
  const Matrix ref = normalize(references, spec);
  std::vector<double> out(sol.rows());
  for (std::size_t i = 0; i < sol.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < ref.rows(); ++j) {
      best = std::min(best, squared_distance(sol.row(i), ref.row(j)));
    }
    out[i] = std::sqrt(best);
  }
  return out;
}

NearestSolutions nearest_solution_distances(const Matrix& solutions,
                                            const NormalizationSpec& spec) {
  const std::size_t n = solutions.rows();
  if (n < 2) throw TooFewSolutions(n, 2);
  const Matrix sol = normalize(solutions, spec);
  NearestSolutions out{std::vector<double>(n), std::vector<std::size_t>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = i;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d2 = squared_distance(sol.row(i), sol.row(j));
      if (d2 < best) {
        best = d2;
        best_j = j;
      }
    }
    out.distances[i] = std::sqrt(best);
    out.indices[i] = best_j;
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> mutual_nearest_pairs(
    std::span<const std::size_t> nearest_index) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < nearest_index.size(); ++i) {
    const std::size_t j = nearest_index[i];
    if (j > i && j < nearest_index.size() && nearest_index[j] == i) pairs.emplace_back(i, j);
  }
  return pairs;
}

Histogram histogram(std::span<const double> values, std::size_t bin_count) {
  if (values.empty()) throw EmptyInput("histogram of no values");
  if (bin_count < 1) throw InvalidArgument("histogram needs at least one bin");
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *min_it;
  const double hi = *max_it;
  const double width = (hi - lo) / static_cast<double>(bin_count);

  Histogram h;
  h.edges.resize(bin_count + 1);
  for (std::size_t b = 0; b <= bin_count; ++b) h.edges[b] = lo + width * static_cast<double>(b);
  h.edges.back() = hi;
  h.counts.assign(bin_count, 0);

  for (double v : values) {
    std::size_t bin = 0;
    if (width > 0.0) {
      const double pos = std::floor((v - lo) / width);
      bin = pos <= 0.0 ? 0 : std::min(static_cast<std::size_t>(pos), bin_count - 1);
      // Nudge across rounding at the edges so membership agrees with `edges`.
      while (bin > 0 && v < h.edges[bin]) --bin;
      while (bin + 1 < bin_count && v >= h.edges[bin + 1]) ++bin;
    }
    ++h.counts[bin];
  }
  return h;
}

}  // namespace paretolens::metrics
