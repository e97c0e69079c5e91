#include "rfe/estimator.h"

#include <cmath>
#include <optional>

#include "rfe/bounds.h"
#include "rfe/errors.h"
#include "rfe/sampler.h"

namespace rfe {
namespace {

void require_config(const RunConfig& config) {
  if (config.samples < 1) throw InvalidInput("sample count M must be >= 1");
  if (config.grid_size < 1) throw InvalidInput("grid size K must be >= 1");
  if (!std::isfinite(config.theta)) throw InvalidInput("theta must be finite");
  validate(config.noise);
}

TrialResult run_with(const RunConfig& config, const DeviationTable* run_noise,
                     Rng& rng) {
  const int grid = config.grid_size;
  const auto n = static_cast<std::size_t>(grid);

  // twiddle[m] = e^{-2 pi i m / K}; the phase k j / K is reduced mod K
  // before lookup.
  Spectrum twiddle(n);
  for (std::size_t m = 0; m < n; ++m) {
    twiddle[m] = std::polar(1.0, -kTwoPi * static_cast<double>(m) / grid);
  }

  SpectrumEstimate est;
  est.coefficients.assign(n, {0.0, 0.0});
  est.samples_used = config.samples;
  std::uniform_int_distribution<int> pick_time(0, grid - 1);

  for (std::int64_t i = 0; i < config.samples; ++i) {
    const int k = pick_time(rng);
    const HadamardOutcome out =
        sample_pair(bias(config.noise, config.theta, k, run_noise), k, rng);
    est.total_depth += k;
    est.clamp_count += out.clamped ? 1 : 0;
    const std::complex<double> z(out.c, out.s);
    std::size_t idx = 0;
    for (std::size_t j = 0; j < n; ++j) {
      est.coefficients[j] += z * twiddle[idx];
      idx += static_cast<std::size_t>(k);
      if (idx >= n) idx -= n;
    }
  }
  const double scale = 1.0 / static_cast<double>(config.samples);
  for (auto& f : est.coefficients) f *= scale;

  TrialResult result;
  result.winning_index = argmax_magnitude(est.coefficients);
  result.theta_hat = kTwoPi * result.winning_index / grid;
  result.spectrum = std::move(est);
  return result;
}

}  // namespace

int argmax_magnitude(std::span<const std::complex<double>> coefficients) {
  int best = 0;
  double best_norm = -1.0;
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    const double v = std::norm(coefficients[j]);
    if (v > best_norm) {
      best_norm = v;
      best = static_cast<int>(j);
    }
  }
  return best;
}

TrialResult run_rfe(const RunConfig& config) {
  require_config(config);
  Rng rng(config.seed);
  const std::optional<DeviationTable> table =
      draw_run_noise(config.noise, config.grid_size, rng);
  return run_with(config, table ? &*table : nullptr, rng);
}

TrialResult run_rfe(const RunConfig& config, const DeviationTable& run_noise) {
  require_config(config);
  Rng rng(config.seed);
  return run_with(config, &run_noise, rng);
}

TrialResult estimate_phase(double epsilon, double delta,
                           const NoiseModel& noise, double theta,
                           std::uint64_t seed) {
  const BoundsReport plan = plan_resources({epsilon, delta, noise});
  if (plan.trivial) {
    TrialResult r;
    r.theta_hat = kPi / 2.0;
    return r;
  }
  return run_rfe({plan.samples, plan.grid_size, theta, noise, seed});
}

}  // namespace rfe
