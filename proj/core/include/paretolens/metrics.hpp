#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "paretolens/matrix.hpp"

namespace paretolens::metrics {

enum class NormalizationMode { None, MinMaxJoint };

/// Per-column affine map onto [0, 1]. Columns with hi == lo map to 0.5.
struct NormalizationSpec {
  NormalizationMode mode = NormalizationMode::None;
  std::vector<double> lo;
  std::vector<double> hi;

  static NormalizationSpec none() { return {}; }
  /// Column bounds over the rows of `data`.
  static NormalizationSpec fit(const Matrix& data);
  /// Column bounds over the rows of both matrices (solutions plus references).
  static NormalizationSpec fit_joint(const Matrix& first, const Matrix& second);
  static NormalizationSpec with_bounds(std::vector<double> lo, std::vector<double> hi);

  bool operator==(const NormalizationSpec&) const = default;
};

/// Throws DimensionMismatch when the column count differs from the spec.
Matrix normalize(const Matrix& vectors, const NormalizationSpec& spec);

/// Distance from each solution to its closest reference point, after
/// normalization. Throws EmptyReferenceSet when `references` has no rows.
std::vector<double> nearest_reference_distances(const Matrix& solutions, const Matrix& references,
                                                const NormalizationSpec& spec);

struct NearestSolutions {
  std::vector<double> distances;
  std::vector<std::size_t> indices;
};

/// For every row, its closest other row (ties go to the smaller index).
/// Throws TooFewSolutions when there are fewer than two rows.
NearestSolutions nearest_solution_distances(const Matrix& solutions,
                                            const NormalizationSpec& spec);

/// Unordered pairs (i, j), i < j, that are each other's nearest neighbour.
std::vector<std::pair<std::size_t, std::size_t>> mutual_nearest_pairs(
    std::span<const std::size_t> nearest_index);

inline constexpr std::size_t kDefaultHistogramBins = 20;

struct Histogram {
  std::vector<double> edges;  // bin_count + 1 entries
  std::vector<std::size_t> counts;
};

/// Uniform bins over [min, max]; each bin is [lo, hi) except the last,
/// which is closed. Throws EmptyInput for no values.
Histogram histogram(std::span<const double> values, std::size_t bin_count = kDefaultHistogramBins);

}  // namespace paretolens::metrics
