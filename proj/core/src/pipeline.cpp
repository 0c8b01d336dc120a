#include "paretolens/pipeline.hpp"

#include <chrono>
#include <exception>

#include "paretolens/artifact_io.hpp"
#include "paretolens/dominance.hpp"
#include "paretolens/errors.hpp"

namespace paretolens::pipeline {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs one stage, records its time, and wraps any failure with the stage name.
template <typename Fn>
void stage(const char* name, double& elapsed, Fn&& fn) {
  const auto start = Clock::now();
  try {
    fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, std::current_exception(), e.what());
  }
  elapsed = seconds_since(start);
}

PipelineResult run_stages(SolutionSet set, ReferenceSet refs, const PipelineConfig& config,
                          TimingReport timing, Clock::time_point started) {
  config.validate();
  if (!config.objective_sense.empty()) {
    if (config.objective_sense.size() != set.meta.n_objectives) {
      throw InvalidArgument("config sense has " + std::to_string(config.objective_sense.size()) +
                            " entries for " + std::to_string(set.meta.n_objectives) +
                            " objectives");
    }
    set.meta.objective_sense = config.objective_sense;
  }
  set.meta.n_references = refs.size();
  validate(set);
  validate(refs, set.meta.n_objectives);

  const std::size_t n = set.size();
  const std::size_t r = refs.size();
  const Matrix objectives = set.objective_matrix();
  const Matrix references = refs.empty() ? Matrix{} : refs.matrix();

  PipelineResult result;
  auto& artifact = result.artifact;
  auto& ann = artifact.annotations;

  stage("dominance", timing.dominance, [&] { ann.dominated = dominance::dominated_flags(set); });

  metrics::NormalizationSpec spec;
  stage("metrics", timing.metrics, [&] {
    spec = config.normalization == metrics::NormalizationMode::MinMaxJoint
               ? metrics::NormalizationSpec::fit_joint(objectives, references)
               : metrics::NormalizationSpec::none();
    if (r > 0) ann.nearest_ref_distance = metrics::nearest_reference_distances(objectives, references, spec);
    if (n >= 2) {
      auto nearest = metrics::nearest_solution_distances(objectives, spec);
      ann.nearest_sol_distance = std::move(nearest.distances);
      ann.nearest_sol_index = std::move(nearest.indices);
    }
  });

  artifact.layout.method = config.projection.method;
  artifact.layout.seed = config.seed;
  stage("projection_decision", timing.projection_decision, [&] {
    auto proj = config.projection;
    proj.seed = config.seed + kDecisionSeedOffset;
    artifact.layout.decision_coords =
        to_points(projection::project_decision_space(set, proj).embedding);
  });
  stage("projection_objective", timing.projection_objective, [&] {
    auto proj = config.projection;
    proj.seed = config.seed + kObjectiveSeedOffset;
    auto layout = projection::project_objective_space(set, refs, spec, proj);
    artifact.layout.objective_coords = std::move(layout.solutions);
    artifact.layout.reference_coords = std::move(layout.references);
  });

  if (r > 0) {
    stage("density", timing.density, [&] {
      artifact.density = density::kde_field(artifact.layout.reference_coords, config.kde);
    });
    if (r >= 2) {
      stage("lof", timing.lof, [&] {
        const std::size_t k = std::min(config.lof.k, r - 1);
        const auto scores = density::lof_scores(artifact.layout.reference_coords, k);
        artifact.density->outlier_indices = density::outlier_indices(scores, config.lof.threshold);
      });
    }
  }

  stage("clustering", timing.clustering, [&] {
    ann.cluster_label = clustering::hdbscan(metrics::normalize(objectives, spec), config.hdbscan);
  });

  artifact.solutions = std::move(set);
  artifact.references = std::move(refs);
  stage("serialize", timing.serialize, [&] {
    validate(artifact);
    result.json = serialize_artifact(artifact);
  });

  timing.total = seconds_since(started);
  result.timing = timing;
  return result;
}

}  // namespace

std::string TimingReport::to_json() const {
  // Hand-rolled to keep the public core free of a JSON dependency; every
  // value is a plain non-negative double.
  const auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return std::string(buf);
  };
  std::string out = "{\"total\":" + num(total) + ",\"projection\":" + num(projection()) +
                    ",\"stages\":{";
  const std::pair<const char*, double> stages[] = {
      {"ingest", ingest},
      {"dominance", dominance},
      {"metrics", metrics},
      {"projection_decision", projection_decision},
      {"projection_objective", projection_objective},
      {"density", density},
      {"lof", lof},
      {"clustering", clustering},
      {"serialize", serialize},
  };
  bool first = true;
  for (const auto& [name, value] : stages) {
    if (!first) out += ",";
    first = false;
    out += "\"" + std::string(name) + "\":" + num(value);
  }
  out += "}}";
  return out;
}

PipelineResult run_pipeline(const ingest::RawInputBundle& bundle, const PipelineConfig& config) {
  const auto started = Clock::now();
  TimingReport timing;
  auto [set, refs] = ingest::build_sets(bundle);
  timing.ingest = seconds_since(started);
  return run_stages(std::move(set), std::move(refs), config, timing, started);
}

PipelineResult run_pipeline(SolutionSet solutions, ReferenceSet references,
                            const PipelineConfig& config) {
  return run_stages(std::move(solutions), std::move(references), config, TimingReport{},
                    Clock::now());
}

}  // namespace paretolens::pipeline
