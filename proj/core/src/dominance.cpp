#include "paretolens/dominance.hpp"

#include "paretolens/errors.hpp"

namespace paretolens::dominance {

namespace {

// Assumes lengths were already checked.
bool dominates_unchecked(std::span<const double> a, std::span<const double> b,
                         std::span<const Sense> sense) noexcept {
  bool strictly_better = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const bool maximize = !sense.empty() && sense[k] == Sense::Maximize;
    const double lhs = maximize ? -a[k] : a[k];
    const double rhs = maximize ? -b[k] : b[k];
    if (lhs > rhs) return false;
    if (lhs < rhs) strictly_better = true;
  }
  return strictly_better;
}

}  // namespace

bool dominates(std::span<const double> a, std::span<const double> b,
               std::span<const Sense> sense) {
  if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
  if (!sense.empty() && sense.size() != a.size()) throw LengthMismatch(a.size(), sense.size());
  return dominates_unchecked(a, b, sense);
}

std::vector<bool> dominated_flags(const Matrix& objectives, std::span<const Sense> sense) {
  if (!sense.empty() && sense.size() != objectives.cols()) {
    throw LengthMismatch(objectives.cols(), sense.size());
  }
  const std::size_t n = objectives.rows();
  std::vector<bool> flags(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto yi = objectives.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && dominates_unchecked(objectives.row(j), yi, sense)) {
        flags[i] = true;
        break;
      }
    }
  }
  return flags;
}

std::vector<bool> dominated_flags(const SolutionSet& set) {
  return dominated_flags(set.objective_matrix(), set.meta.objective_sense);
}

}  // namespace paretolens::dominance
