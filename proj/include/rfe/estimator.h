#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "rfe/noise.h"
#include "rfe/spectrum.h"

namespace rfe {

struct RunConfig {
  std::int64_t samples = 1;  // M
  int grid_size = 1;         // K
  double theta = 0.0;        // ground truth used to simulate outcomes
  NoiseModel noise = noise::Ideal{};
  std::uint64_t seed = 0;
};

struct SpectrumEstimate {
  Spectrum coefficients;
  std::int64_t samples_used = 0;
  // Sum of k_i over samples. Each sample runs two circuits (real and
  // imaginary test) of depth k_i, so the c-U count is twice this.
  std::int64_t total_depth = 0;
  std::int64_t clamp_count = 0;
};

// An empty spectrum marks the no-sampling branch of estimate_phase.
struct TrialResult {
  double theta_hat = 0.0;
  int winning_index = 0;
  SpectrumEstimate spectrum;
};

// Index of the largest |f_j|; ties go to the smallest j.
int argmax_magnitude(std::span<const std::complex<double>> coefficients);

// Randomized Fourier estimation. For stochastic noise models a deviation
// table is drawn from the run's stream before any sampling and held fixed.
TrialResult run_rfe(const RunConfig& config);

// Same, with the per-run deviation table supplied by the caller.
TrialResult run_rfe(const RunConfig& config, const DeviationTable& run_noise);

// Chooses K and M from the resource bounds for the noise model and runs
// the estimator. epsilon >= pi/2 returns pi/2 without sampling.
// Throws BoundsUnachievable when the noise is past its threshold.
TrialResult estimate_phase(double epsilon, double delta,
                           const NoiseModel& noise, double theta,
                           std::uint64_t seed);

}  // namespace rfe
