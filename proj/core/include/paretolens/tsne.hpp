#pragma once

#include <cstdint>
#include <vector>

#include "paretolens/matrix.hpp"

namespace paretolens::tsne {

struct TsneConfig {
  double perplexity = 30.0;
  double learning_rate = 200.0;
  int iterations = 1000;
  double early_exaggeration_factor = 12.0;
  int early_exaggeration_iters = 250;
  double momentum_initial = 0.5;
  double momentum_final = 0.8;
  /// Iteration at which momentum switches to its final value.
  int momentum_switch_iter = 250;
  /// KL divergence is sampled after every `kl_sample_every` iterations.
  int kl_sample_every = 50;
  double init_stddev = 1e-4;
};

/// Row-stochastic conditional affinities p(j|i) calibrated per point so
/// that the Shannon entropy (natural log) of row i equals log(perplexity).
struct ConditionalAffinities {
  Matrix probabilities;  // K x K, zero diagonal
  std::vector<double> beta;     // precision 1 / (2 sigma^2) per point
  std::vector<double> entropy;  // achieved entropy per point
  double perplexity = 0.0;
};

/// Perplexity actually used for K points: min(requested, (K - 1) / 3).
double effective_perplexity(double requested, std::size_t n_points) noexcept;

ConditionalAffinities calibrate_affinities(const Matrix& points, double perplexity);

/// Symmetric joint affinities P = (p(j|i) + p(i|j)) / 2K, floored at 1e-12.
Matrix joint_affinities(const ConditionalAffinities& conditional);

/// KL(P || Q) for an embedding under the Student-t kernel.
double kl_divergence(const Matrix& joint, const Matrix& embedding);

struct TsneRun {
  Matrix embedding;  // K x 2
  std::vector<double> kl_trace;
  std::vector<int> kl_iterations;  // 1-based iteration of each trace sample
  double perplexity = 0.0;
};

/// Exact symmetric t-SNE with early exaggeration, momentum and gains.
TsneRun run(const Matrix& points, const TsneConfig& config, std::uint64_t seed);

}  // namespace paretolens::tsne
