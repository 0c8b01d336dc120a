#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "paretolens/clustering.hpp"
#include "paretolens/density.hpp"
#include "paretolens/ingest.hpp"
#include "paretolens/metrics.hpp"
#include "paretolens/model.hpp"
#include "paretolens/projection.hpp"

namespace paretolens::pipeline {

struct LofConfig {
  std::size_t k = density::kDefaultLofNeighbors;
  double threshold = density::kDefaultOutlierThreshold;
};

/// Every tunable of a preprocessing run. `seed` feeds all stochastic
/// stages; the decision projection uses seed + kDecisionSeedOffset and the
/// objective projection seed + kObjectiveSeedOffset.
struct PipelineConfig {
  projection::ProjectionConfig projection;
  clustering::HdbscanConfig hdbscan;
  density::KdeConfig kde;
  LofConfig lof;
  metrics::NormalizationMode normalization = metrics::NormalizationMode::MinMaxJoint;
  std::uint64_t seed = 0;
  std::vector<Sense> objective_sense;  // empty = all minimise

  /// Applies a JSON object of overrides on top of `base`. Unknown keys and
  /// out-of-range values throw InvalidArgument; bad JSON throws MalformedJson.
  static PipelineConfig from_json_overrides(std::string_view json, PipelineConfig base);
  static PipelineConfig from_json_overrides(std::string_view json);

  /// Throws InvalidArgument if a component invariant is violated.
  void validate() const;
};

inline constexpr std::uint64_t kDecisionSeedOffset = 0;
inline constexpr std::uint64_t kObjectiveSeedOffset = 1;

/// Wall-clock seconds per stage. Skipped stages stay at zero.
struct TimingReport {
  double ingest = 0.0;
  double dominance = 0.0;
  double metrics = 0.0;
  double projection_decision = 0.0;
  double projection_objective = 0.0;
  double density = 0.0;
  double lof = 0.0;
  double clustering = 0.0;
  double serialize = 0.0;
  double total = 0.0;

  double projection() const noexcept { return projection_decision + projection_objective; }
  /// {"total": .., "projection": .., "stages": {...}}
  std::string to_json() const;
};

struct PipelineResult {
  AnalysisArtifact artifact;
  std::string json;  // serialize_artifact(artifact)
  TimingReport timing;
};

/// Ingest, then every analysis stage, then serialization. Ingest errors
/// propagate unchanged; later failures are wrapped in StageError.
PipelineResult run_pipeline(const ingest::RawInputBundle& bundle, const PipelineConfig& config);

/// Same, starting from already-built sets (ingest time is reported as 0).
PipelineResult run_pipeline(SolutionSet solutions, ReferenceSet references,
                            const PipelineConfig& config);

}  // namespace paretolens::pipeline
