#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "rfe/noise.h"

namespace rfe {

struct BoundsQuery {
  double epsilon = 0.1;
  double delta = 0.1;
  NoiseModel noise = noise::Ideal{};
};

struct BoundsReport {
  bool trivial = false;  // epsilon >= pi/2: answer pi/2, no sampling
  int grid_size = 0;
  std::int64_t samples = 0;
  double inflation_factor = 1.0;
  double expected_total_depth = 0.0;
  // BAN bound the model was mapped onto, when one applies.
  std::optional<double> effective_eta_bar;
  std::map<std::string, double> thresholds;
};

// ceil(2 pi / epsilon).
int grid_size(double epsilon);

// ceil((81 pi^2 / 2) ln(8 pi / (delta epsilon))).
std::int64_t samples_noiseless(double epsilon, double delta);

// (1 - (9 pi / 2 sqrt 2) eta_bar)^-2.
double ban_inflation(double eta_bar);

// Noiseless count times ban_inflation, ceiling taken last.
std::int64_t samples_ban(double epsilon, double delta, double eta_bar);

// Gaussian sample count:
//   ceil((81 pi^2/2) L (1 - (9 sigma/8) sqrt(eps pi / L))^-2),
//   L = ln(16 pi / (delta eps)).
std::int64_t samples_gaussian(double epsilon, double delta, double sigma);
double gaussian_inflation(double epsilon, double delta, double sigma);

// Variant obtained by substituting eta_bar^2 = (sigma^2/4K) ln(8K/delta)
// into the BAN factor with K = 2 pi / eps: sqrt(eps pi L) replaces
// sqrt(eps pi / L). Exposed for comparison; nothing is run with it.
double gaussian_inflation_rederived(double epsilon, double delta,
                                    double sigma);
std::int64_t samples_gaussian_rederived(double epsilon, double delta,
                                        double sigma);

// sqrt(64/(81 pi eps) ln(16 pi/(delta eps))).
double sigma_max(double epsilon, double delta);

// Union-bound failure probability 4K exp(-2M (1 - c eta_bar)^2 / 81 pi^2),
// capped at 1. The noiseless form has eta_bar absent.
double inspec_failure_bound(std::int64_t samples, double grid_size,
                            std::optional<double> eta_bar = std::nullopt);

// sqrt((sigma^2 / 4K) ln(8K / delta)).
double gaussian_etabar(double sigma, int grid_size, double delta);

// M (K - 1) / 2.
double expected_total_depth(std::int64_t samples, int grid_size);

// Full plan for a query, mapping each noise model onto the bound that
// covers it. Throws BoundsUnachievable past threshold.
BoundsReport plan_resources(const BoundsQuery& query);

// Report-only side calculations that the tests print but do not assert.
struct HighCoherenceReport {
  double epsilon;
  int grid_size;
  double t2_over_k_eta;       // T2/K needed for K/T2 < ban_threshold()
  double t2_over_k_half_eta;  // same with the probability shift K/(2 T2)
};
HighCoherenceReport high_coherence_report(double epsilon);

// delta at which samples_noiseless(epsilon, .) reaches `samples`.
double delta_for_samples(double epsilon, double samples);

}  // namespace rfe
