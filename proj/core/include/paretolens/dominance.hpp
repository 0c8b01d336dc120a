#pragma once

#include <span>
#include <vector>

#include "paretolens/matrix.hpp"
#include "paretolens/model.hpp"

namespace paretolens::dominance {

/// Pareto dominance: `a` is no worse than `b` in every objective and
/// strictly better in at least one. An empty `sense` means all-minimize.
/// Throws LengthMismatch when the vector (or sense) lengths disagree.
bool dominates(std::span<const double> a, std::span<const double> b,
               std::span<const Sense> sense = {});

/// flag[i] is true iff some other row dominates row i. Identical rows never
/// dominate each other.
std::vector<bool> dominated_flags(const Matrix& objectives, std::span<const Sense> sense = {});
std::vector<bool> dominated_flags(const SolutionSet& set);

}  // namespace paretolens::dominance
