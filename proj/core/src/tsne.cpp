#include "paretolens/tsne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "paretolens/errors.hpp"

namespace paretolens::tsne {

namespace {

constexpr double kEntropyTolerance = 1e-9;
constexpr int kMaxCalibrationSteps = 200;
constexpr double kMinJointProbability = 1e-12;
constexpr double kMinGain = 0.01;

// Calibrates one row in place. `dist` holds squared distances to every
// other point (the self entry is skipped via `self`).
double calibrate_row(const std::vector<double>& dist, std::size_t self, double target_entropy,
                     std::span<double> row, double& entropy_out) {
  const std::size_t k = dist.size();
  double d_min = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < k; ++j) {
    if (j != self) d_min = std::min(d_min, dist[j]);
  }

  double beta = 1.0;
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  double entropy = 0.0;
  for (int step = 0; step < kMaxCalibrationSteps; ++step) {
    // Shifting by the smallest distance leaves the normalised row unchanged.
    double sum = 0.0;
    double weighted = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == self) {
        row[j] = 0.0;
        continue;
      }
      const double shifted = dist[j] - d_min;
      const double p = std::exp(-beta * shifted);
      row[j] = p;
      sum += p;
      weighted += shifted * p;
    }
    entropy = std::log(sum) + beta * weighted / sum;
    const double diff = entropy - target_entropy;
    if (std::abs(diff) < kEntropyTolerance) break;
    if (diff > 0.0) {
      lo = beta;
      beta = std::isinf(hi) ? beta * 2.0 : 0.5 * (lo + hi);
    } else {
      hi = beta;
      beta = 0.5 * (lo + hi);
    }
  }

  double sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) sum += row[j];
  for (std::size_t j = 0; j < k; ++j) row[j] /= sum;
  entropy_out = entropy;
  return beta;
}

}  // namespace

double effective_perplexity(double requested, std::size_t n_points) noexcept {
  const double ceiling = (static_cast<double>(n_points) - 1.0) / 3.0;
  return std::min(requested, ceiling);
}

ConditionalAffinities calibrate_affinities(const Matrix& points, double perplexity) {
  const std::size_t k = points.rows();
  if (k < 2) throw TooFewPoints(k, 2);
  if (!(perplexity > 0.0)) throw InvalidArgument("perplexity must be positive");

  ConditionalAffinities out;
  out.perplexity = perplexity;
  out.probabilities = Matrix(k, k);
  out.beta.resize(k);
  out.entropy.resize(k);
  const double target = std::log(perplexity);
  std::vector<double> dist(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) dist[j] = squared_distance(points.row(i), points.row(j));
    out.beta[i] = calibrate_row(dist, i, target, out.probabilities.row(i), out.entropy[i]);
  }
  return out;
}

Matrix joint_affinities(const ConditionalAffinities& conditional) {
  const auto& c = conditional.probabilities;
  const std::size_t k = c.rows();
  Matrix p(k, k);
  const double scale = 1.0 / (2.0 * static_cast<double>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double v = std::max((c(i, j) + c(j, i)) * scale, kMinJointProbability);
      p(i, j) = v;
      p(j, i) = v;
    }
  }
  return p;
}

double kl_divergence(const Matrix& joint, const Matrix& y) {
  const std::size_t k = y.rows();
  double z = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double dx = y(i, 0) - y(j, 0);
      const double dy = y(i, 1) - y(j, 1);
      z += 2.0 / (1.0 + dx * dx + dy * dy);
    }
  }
  double kl = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double dx = y(i, 0) - y(j, 0);
      const double dy = y(i, 1) - y(j, 1);
      const double q = 1.0 / ((1.0 + dx * dx + dy * dy) * z);
      const double p = joint(i, j);
      kl += 2.0 * p * std::log(p / std::max(q, std::numeric_limits<double>::min()));
    }
  }
  return kl;
}

TsneRun run(const Matrix& points, const TsneConfig& config, std::uint64_t seed) {
  const std::size_t k = points.rows();
  if (k < 4) throw TooFewPoints(k, 4);
  if (config.iterations < 1) throw InvalidArgument("t-SNE needs at least one iteration");
  if (!(config.learning_rate > 0.0)) throw InvalidArgument("learning rate must be positive");

  TsneRun result;
  result.perplexity = effective_perplexity(config.perplexity, k);
  const Matrix p = joint_affinities(calibrate_affinities(points, result.perplexity));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, config.init_stddev);
  Matrix y(k, 2);
  for (double& v : y.data()) v = gauss(rng);

  Matrix update(k, 2, 0.0);
  Matrix gains(k, 2, 1.0);
  std::vector<double> attract(2 * k);
  std::vector<double> repulse(2 * k);

  for (int iter = 0; iter < config.iterations; ++iter) {
    // The optimiser restarts when exaggeration ends, so velocity built up
    // against the inflated P does not carry into the second phase.
    if (iter == config.early_exaggeration_iters && iter > 0) {
      std::fill(update.data().begin(), update.data().end(), 0.0);
      std::fill(gains.data().begin(), gains.data().end(), 1.0);
    }
    const double exaggeration =
        iter < config.early_exaggeration_iters ? config.early_exaggeration_factor : 1.0;
    const double momentum =
        iter < config.momentum_switch_iter ? config.momentum_initial : config.momentum_final;

    // One symmetric pass accumulates both force terms and the normaliser Z:
    // grad_i = 4 * (sum_j p_ij w_ij (y_i - y_j) - (1/Z) sum_j w_ij^2 (y_i - y_j)),
    // with w_ij = 1 / (1 + |y_i - y_j|^2).
    std::fill(attract.begin(), attract.end(), 0.0);
    std::fill(repulse.begin(), repulse.end(), 0.0);
    double z = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double yi0 = y(i, 0);
      const double yi1 = y(i, 1);
      const auto p_row = p.row(i);
      double ax = 0.0, ay = 0.0, rx = 0.0, ry = 0.0;
      for (std::size_t j = i + 1; j < k; ++j) {
        const double dx = yi0 - y(j, 0);
        const double dy = yi1 - y(j, 1);
        const double w = 1.0 / (1.0 + dx * dx + dy * dy);
        const double pw = p_row[j] * w;
        const double ww = w * w;
        z += 2.0 * w;
        ax += pw * dx;
        ay += pw * dy;
        rx += ww * dx;
        ry += ww * dy;
        attract[2 * j] -= pw * dx;
        attract[2 * j + 1] -= pw * dy;
        repulse[2 * j] -= ww * dx;
        repulse[2 * j + 1] -= ww * dy;
      }
      attract[2 * i] += ax;
      attract[2 * i + 1] += ay;
      repulse[2 * i] += rx;
      repulse[2 * i + 1] += ry;
    }

    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t d = 0; d < 2; ++d) {
        const double grad = 4.0 * (exaggeration * attract[2 * i + d] - repulse[2 * i + d] / z);
        double& gain = gains(i, d);
        double& step = update(i, d);
        gain = (grad > 0.0) != (step > 0.0) ? gain + 0.2 : gain * 0.8;
        gain = std::max(gain, kMinGain);
        step = momentum * step - config.learning_rate * gain * grad;
        y(i, d) += step;
      }
    }

    double mean0 = 0.0, mean1 = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      mean0 += y(i, 0);
      mean1 += y(i, 1);
    }
    mean0 /= static_cast<double>(k);
    mean1 /= static_cast<double>(k);
    for (std::size_t i = 0; i < k; ++i) {
      y(i, 0) -= mean0;
      y(i, 1) -= mean1;
    }

    if (config.kl_sample_every > 0 && (iter + 1) % config.kl_sample_every == 0) {
      result.kl_trace.push_back(kl_divergence(p, y));
      result.kl_iterations.push_back(iter + 1);
    }
  }
  if (result.kl_trace.empty()) {
    result.kl_trace.push_back(kl_divergence(p, y));
    result.kl_iterations.push_back(config.iterations);
  }
  result.embedding = std::move(y);
  return result;
}

}  // namespace paretolens::tsne
