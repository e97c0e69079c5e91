#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rfe/bounds.h"
#include "rfe/noise.h"
#include "rfe/spectrum.h"

// Verification kernels. The campaign, the lemma scan and the enumeration
// oracle each come in an OpenMP version and a *_serial reference; both
// produce identical results for any worker count.

namespace rfe {

struct WilsonInterval {
  double lo;
  double hi;
};

// 95% Wilson score interval (z = 1.959964).
WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials);

struct SuccessStats {
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double rate = 0.0;
  WilsonInterval wilson_ci_95{0.0, 1.0};
  double epsilon_used = 0.0;
  double delta_used = 0.0;
  std::int64_t samples_per_trial = 0;
  int grid_size = 0;
  std::int64_t clamp_events = 0;
  std::int64_t total_depth = 0;
};

struct OracleSpectrum {
  Spectrum coefficients;  // exact E f_j
  Spectrum noise_shift;   // eta_hat_j, zero when no table is given
};

inline constexpr int kMaxEnumerationGrid = 4096;

// E f_j by summing over k and the four (c, s) outcomes weighted by their
// clamped probabilities. Throws InvalidInput for K > 4096.
OracleSpectrum exact_estimator_expectation(
    double theta, int grid_size, const DeviationTable* deviations = nullptr,
    int workers = 0);
OracleSpectrum exact_estimator_expectation_serial(
    double theta, int grid_size, const DeviationTable* deviations = nullptr);

enum class DistanceMode { kLine, kCircular };

struct ThetaSampling {
  enum class Kind { kFixed, kUniform } kind = Kind::kUniform;
  double theta = 0.0;  // kFixed
  double lo = 0.0;     // kUniform
  double hi = kPi;
  static ThetaSampling fixed(double t) { return {Kind::kFixed, t, t, t}; }
  static ThetaSampling uniform(double a, double b) {
    return {Kind::kUniform, 0.0, a, b};
  }
};

struct CampaignOptions {
  std::int64_t trials = 100;
  ThetaSampling theta = ThetaSampling::uniform(0.2, kPi - 0.2);
  std::uint64_t master_seed = 0;
  int workers = 0;  // 0: all cores
  DistanceMode distance = DistanceMode::kLine;
};

double phase_error(double theta_hat, double theta, DistanceMode mode);

// Seeds and theta for trial i depend only on (master_seed, i).
std::uint64_t trial_run_seed(std::uint64_t master_seed, std::int64_t trial);
double trial_theta(const ThetaSampling& sampling, std::uint64_t master_seed,
                   std::int64_t trial);

// Runs estimate_phase per trial; success iff error <= epsilon.
SuccessStats monte_carlo_success(const BoundsQuery& query,
                                 const CampaignOptions& options);
SuccessStats monte_carlo_success_serial(const BoundsQuery& query,
                                        const CampaignOptions& options);

struct LemmaScanReport {
  int k_min = 0;
  int k_max = 0;
  int theta_points = 0;
  std::int64_t close_checked = 0;
  std::int64_t nonadjacent_checked = 0;
  std::int64_t violations = 0;
  double min_close_magnitude = 1.0;
  double max_nonadjacent_magnitude = 0.0;
  int min_close_k = 0;
  double min_close_theta = 0.0;
  int max_nonadjacent_k = 0;
  double max_nonadjacent_theta = 0.0;
  // Bound minus worst value; positive means the bound holds with room.
  double close_margin = 0.0;        // min_close - 2/pi
  double nonadjacent_margin = 0.0;  // 1/(2 sqrt 2) - max_nonadjacent
};

inline constexpr double kLemmaTolerance = 1e-12;

// Over K in [k_min, k_max] and theta_points values evenly spaced on [0, pi]
// (endpoints included): checks |f_j| >= 2/pi for close j and
// |f_j| <= 1/(2 sqrt 2) <= 10/(9 pi) for non-adjacent j.
LemmaScanReport lemma_bound_scan(int k_min, int k_max, int theta_points,
                                 int workers = 0);
LemmaScanReport lemma_bound_scan_serial(int k_min, int k_max,
                                        int theta_points);

enum class SweepFamily {
  kIdeal,  // parameter is epsilon
  kBan,
  kGaussian,
  kGaussianLinear,
  kDephasing,      // parameter is K / T2
  kHighCoherence,  // parameter is K / T2
};

struct SweepRow {
  double parameter = 0.0;
  bool achievable = true;
  std::int64_t samples_predicted = 0;
  int grid_size = 0;
  // max_k |eta_1k| implied by the model at this point (BAN-type families).
  double implied_max_eta = 0.0;
  SuccessStats stats;
};

struct SweepOptions {
  SweepFamily family = SweepFamily::kIdeal;
  std::vector<double> grid;
  double epsilon = 0.1;
  double delta = 0.1;
  // Strategy for BAN sweeps.
  AdversaryStrategy strategy = adversary::SignFlip{};
  CampaignOptions campaign;
};

NoiseModel sweep_model(SweepFamily family, double parameter, int grid_size,
                       const AdversaryStrategy& strategy);

std::vector<SweepRow> noise_sweep(const SweepOptions& options);

}  // namespace rfe
