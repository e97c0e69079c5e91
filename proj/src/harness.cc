#include "rfe/harness.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <tuple>

#include <omp.h>

#include "rfe/errors.h"
#include "rfe/estimator.h"

namespace rfe {
namespace {

int resolve_workers(int workers) {
  return workers > 0 ? workers : omp_get_max_threads();
}

// ---- enumeration oracle ----------------------------------------------------

struct OracleInputs {
  int grid_size;
  // E[c + i s | k] from the four weighted outcomes.
  Spectrum conditional_mean;
  Spectrum deviation;  // eta1_k + i eta2_k
  bool has_deviation;
};

OracleInputs prepare_oracle(double theta, int grid_size,
                            const DeviationTable* deviations) {
  if (grid_size < 1) throw InvalidInput("grid size K must be >= 1");
  if (grid_size > kMaxEnumerationGrid) {
    throw InvalidInput("grid size " + std::to_string(grid_size) +
                       " is too large for exact enumeration (max 4096)");
  }
  if (deviations != nullptr &&
      (deviations->eta1.size() < static_cast<std::size_t>(grid_size) ||
       deviations->eta2.size() < static_cast<std::size_t>(grid_size))) {
    throw InvalidInput("deviation table shorter than the grid");
  }
  const auto n = static_cast<std::size_t>(grid_size);
  OracleInputs in{grid_size, Spectrum(n), Spectrum(n), deviations != nullptr};
  for (std::size_t k = 0; k < n; ++k) {
    const double phase = static_cast<double>(k) * theta;
    double e1 = 0.0;
    double e2 = 0.0;
    if (deviations != nullptr) {
      e1 = deviations->eta1[k];
      e2 = deviations->eta2[k];
    }
    const double pc = std::clamp(0.5 * (1.0 + std::cos(phase) + e1), 0.0, 1.0);
    const double ps = std::clamp(0.5 * (1.0 + std::sin(phase) + e2), 0.0, 1.0);
    std::complex<double> mean{0.0, 0.0};
    for (int c : {1, -1}) {
      for (int s : {1, -1}) {
        const double weight = (c == 1 ? pc : 1.0 - pc) * (s == 1 ? ps : 1.0 - ps);
        mean += weight * std::complex<double>(c, s);
      }
    }
    in.conditional_mean[k] = mean;
    in.deviation[k] = {e1, e2};
  }
  return in;
}

void oracle_row(const OracleInputs& in, int j, OracleSpectrum& out) {
  const auto n = static_cast<std::size_t>(in.grid_size);
  const auto jj = static_cast<std::size_t>(j);
  std::complex<double> coeff{0.0, 0.0};
  std::complex<double> shift{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t m = (jj * k) % n;
    const std::complex<double> w =
        std::polar(1.0, -kTwoPi * static_cast<double>(m) / in.grid_size);
    coeff += in.conditional_mean[k] * w;
    if (in.has_deviation) shift += in.deviation[k] * w;
  }
  out.coefficients[jj] = coeff / static_cast<double>(in.grid_size);
  out.noise_shift[jj] = shift / static_cast<double>(in.grid_size);
}

OracleSpectrum empty_oracle(int grid_size) {
  const auto n = static_cast<std::size_t>(grid_size);
  return {Spectrum(n), Spectrum(n)};
}

// ---- campaign --------------------------------------------------------------

struct TrialOutcome {
  bool success = false;
  std::int64_t clamps = 0;
  std::int64_t depth = 0;
};

TrialOutcome run_trial(const BoundsQuery& query, const CampaignOptions& options,
                       std::int64_t i) {
  const double theta = trial_theta(options.theta, options.master_seed, i);
  const TrialResult r =
      estimate_phase(query.epsilon, query.delta, query.noise, theta,
                     trial_run_seed(options.master_seed, i));
  return {phase_error(r.theta_hat, theta, options.distance) <= query.epsilon,
          r.spectrum.clamp_count, r.spectrum.total_depth};
}

SuccessStats begin_campaign(const BoundsQuery& query,
                            const CampaignOptions& options) {
  if (options.trials < 1) throw InvalidInput("trials must be >= 1");
  const auto& t = options.theta;
  if (!std::isfinite(t.theta) || !std::isfinite(t.lo) || !std::isfinite(t.hi) ||
      t.lo > t.hi) {
    throw InvalidInput("theta sampling range is invalid");
  }
  // Fails fast (BoundsUnachievable) before any worker starts.
  const BoundsReport plan = plan_resources(query);
  SuccessStats s;
  s.trials = options.trials;
  s.epsilon_used = query.epsilon;
  s.delta_used = query.delta;
  s.samples_per_trial = plan.samples;
  s.grid_size = plan.grid_size;
  return s;
}

void finish_campaign(SuccessStats& s, const std::vector<TrialOutcome>& outcomes) {
  for (const auto& o : outcomes) {
    s.successes += o.success ? 1 : 0;
    s.clamp_events += o.clamps;
    s.total_depth += o.depth;
  }
  s.rate = static_cast<double>(s.successes) / static_cast<double>(s.trials);
  s.wilson_ci_95 = wilson_interval(s.successes, s.trials);
}

// ---- lemma scan ------------------------------------------------------------

const double kCloseBound = 2.0 / kPi;
const double kNonAdjacentBound = 10.0 / (9.0 * kPi);
const double kNonAdjacentTightBound = 1.0 / (2.0 * std::sqrt(2.0));

struct ScanAccumulator {
  std::int64_t close_checked = 0;
  std::int64_t nonadjacent_checked = 0;
  std::int64_t violations = 0;
  double min_close = 2.0;
  int min_close_k = 0;
  int min_close_i = 0;
  double max_nonadj = -1.0;
  int max_nonadj_k = 0;
  int max_nonadj_i = 0;
};

// Ordering on (value, K, theta index) keeps the reported location
// independent of how work was split.
void merge_into(ScanAccumulator& a, const ScanAccumulator& b) {
  a.close_checked += b.close_checked;
  a.nonadjacent_checked += b.nonadjacent_checked;
  a.violations += b.violations;
  if (std::tie(b.min_close, b.min_close_k, b.min_close_i) <
      std::tie(a.min_close, a.min_close_k, a.min_close_i)) {
    a.min_close = b.min_close;
    a.min_close_k = b.min_close_k;
    a.min_close_i = b.min_close_i;
  }
  if (std::make_tuple(b.max_nonadj, -b.max_nonadj_k, -b.max_nonadj_i) >
      std::make_tuple(a.max_nonadj, -a.max_nonadj_k, -a.max_nonadj_i)) {
    a.max_nonadj = b.max_nonadj;
    a.max_nonadj_k = b.max_nonadj_k;
    a.max_nonadj_i = b.max_nonadj_i;
  }
}

double scan_theta(int i, int theta_points) {
  if (theta_points == 1) return 0.0;
  return kPi * static_cast<double>(i) / static_cast<double>(theta_points - 1);
}

void scan_point(int grid, int i, int theta_points, ScanAccumulator& acc) {
  const double theta = scan_theta(i, theta_points);
  for (int j = 0; j < grid; ++j) {
    const FrequencyClass cls = classify_frequency(j, theta, grid);
    if (cls == FrequencyClass::kAdjacentOnly) continue;
    const double mag = std::abs(expected_coefficient(theta, j, grid));
    if (cls == FrequencyClass::kClose) {
      ++acc.close_checked;
      if (mag < kCloseBound - kLemmaTolerance) ++acc.violations;
      if (std::tie(mag, grid, i) <
          std::tie(acc.min_close, acc.min_close_k, acc.min_close_i)) {
        acc.min_close = mag;
        acc.min_close_k = grid;
        acc.min_close_i = i;
      }
    } else {
      ++acc.nonadjacent_checked;
      if (mag > kNonAdjacentBound + kLemmaTolerance ||
          mag > kNonAdjacentTightBound + kLemmaTolerance) {
        ++acc.violations;
      }
      if (std::make_tuple(mag, -grid, -i) >
          std::make_tuple(acc.max_nonadj, -acc.max_nonadj_k, -acc.max_nonadj_i)) {
        acc.max_nonadj = mag;
        acc.max_nonadj_k = grid;
        acc.max_nonadj_i = i;
      }
    }
  }
}

void require_scan(int k_min, int k_max, int theta_points) {
  if (k_min < 4 || k_max > 1024 || k_min > k_max) {
    throw InvalidInput("lemma scan needs 4 <= k_min <= k_max <= 1024");
  }
  if (theta_points < 1) throw InvalidInput("theta_points must be >= 1");
}

LemmaScanReport make_report(int k_min, int k_max, int theta_points,
                            const ScanAccumulator& acc) {
  LemmaScanReport r;
  r.k_min = k_min;
  r.k_max = k_max;
  r.theta_points = theta_points;
  r.close_checked = acc.close_checked;
  r.nonadjacent_checked = acc.nonadjacent_checked;
  r.violations = acc.violations;
  r.min_close_magnitude = acc.close_checked ? acc.min_close : 0.0;
  r.min_close_k = acc.min_close_k;
  r.min_close_theta = scan_theta(acc.min_close_i, theta_points);
  r.max_nonadjacent_magnitude = acc.nonadjacent_checked ? acc.max_nonadj : 0.0;
  r.max_nonadjacent_k = acc.max_nonadj_k;
  r.max_nonadjacent_theta = scan_theta(acc.max_nonadj_i, theta_points);
  r.close_margin = r.min_close_magnitude - kCloseBound;
  r.nonadjacent_margin = kNonAdjacentTightBound - r.max_nonadjacent_magnitude;
  return r;
}

}  // namespace

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials) {
  if (trials <= 0 || successes < 0 || successes > trials) {
    throw InvalidInput("wilson_interval needs 0 <= successes <= trials, trials > 0");
  }
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
  // Clamp so lo <= rate <= hi survives rounding at p = 0 and p = 1.
  return {std::min(p, std::max(0.0, center - half)),
          std::max(p, std::min(1.0, center + half))};
}

OracleSpectrum exact_estimator_expectation_serial(
    double theta, int grid_size, const DeviationTable* deviations) {
  const OracleInputs in = prepare_oracle(theta, grid_size, deviations);
  OracleSpectrum out = empty_oracle(grid_size);
  for (int j = 0; j < grid_size; ++j) oracle_row(in, j, out);
  return out;
}

OracleSpectrum exact_estimator_expectation(double theta, int grid_size,
                                           const DeviationTable* deviations,
                                           int workers) {
  const OracleInputs in = prepare_oracle(theta, grid_size, deviations);
  OracleSpectrum out = empty_oracle(grid_size);
#pragma omp parallel for num_threads(resolve_workers(workers)) schedule(static)
  for (int j = 0; j < grid_size; ++j) oracle_row(in, j, out);
  return out;
}

double phase_error(double theta_hat, double theta, DistanceMode mode) {
  const double d = std::fabs(theta_hat - theta);
  if (mode == DistanceMode::kLine) return d;
  const double r = std::fmod(d, kTwoPi);
  return std::min(r, kTwoPi - r);
}

std::uint64_t trial_run_seed(std::uint64_t master_seed, std::int64_t trial) {
  return derive_seed(master_seed, 2 * static_cast<std::uint64_t>(trial) + 1);
}

double trial_theta(const ThetaSampling& sampling, std::uint64_t master_seed,
                   std::int64_t trial) {
  if (sampling.kind == ThetaSampling::Kind::kFixed) return sampling.theta;
  Rng rng(derive_seed(master_seed, 2 * static_cast<std::uint64_t>(trial)));
  return std::uniform_real_distribution<double>(sampling.lo, sampling.hi)(rng);
}

SuccessStats monte_carlo_success_serial(const BoundsQuery& query,
                                        const CampaignOptions& options) {
  SuccessStats s = begin_campaign(query, options);
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(options.trials));
  for (std::int64_t i = 0; i < options.trials; ++i) {
    outcomes[static_cast<std::size_t>(i)] = run_trial(query, options, i);
  }
  finish_campaign(s, outcomes);
  return s;
}

SuccessStats monte_carlo_success(const BoundsQuery& query,
                                 const CampaignOptions& options) {
  SuccessStats s = begin_campaign(query, options);
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(options.trials));
  std::exception_ptr failure;
#pragma omp parallel for num_threads(resolve_workers(options.workers)) schedule(dynamic, 4)
  for (std::int64_t i = 0; i < options.trials; ++i) {
    try {
      outcomes[static_cast<std::size_t>(i)] = run_trial(query, options, i);
    } catch (...) {
#pragma omp critical(rfe_campaign_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  finish_campaign(s, outcomes);
  return s;
}

LemmaScanReport lemma_bound_scan_serial(int k_min, int k_max,
                                        int theta_points) {
  require_scan(k_min, k_max, theta_points);
  ScanAccumulator acc;
  for (int grid = k_min; grid <= k_max; ++grid) {
    for (int i = 0; i < theta_points; ++i) scan_point(grid, i, theta_points, acc);
  }
  return make_report(k_min, k_max, theta_points, acc);
}

LemmaScanReport lemma_bound_scan(int k_min, int k_max, int theta_points,
                                 int workers) {
  require_scan(k_min, k_max, theta_points);
  const std::int64_t grids = k_max - k_min + 1;
  const std::int64_t items = grids * theta_points;
  ScanAccumulator total;
#pragma omp parallel num_threads(resolve_workers(workers))
  {
    ScanAccumulator local;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t item = 0; item < items; ++item) {
      const int grid = k_min + static_cast<int>(item / theta_points);
      const int i = static_cast<int>(item % theta_points);
      scan_point(grid, i, theta_points, local);
    }
#pragma omp critical(rfe_scan_merge)
    merge_into(total, local);
  }
  return make_report(k_min, k_max, theta_points, total);
}

NoiseModel sweep_model(SweepFamily family, double parameter, int grid_size,
                       const AdversaryStrategy& strategy) {
  switch (family) {
    case SweepFamily::kIdeal:
      return noise::Ideal{};
    case SweepFamily::kBan:
      return noise::Ban{parameter, strategy};
    case SweepFamily::kGaussian:
      return noise::Gaussian{parameter};
    case SweepFamily::kGaussianLinear:
      return noise::GaussianLinear{parameter};
    case SweepFamily::kDephasing:
      return noise::Dephasing{grid_size / parameter};
    case SweepFamily::kHighCoherence:
      return noise::HighCoherence{grid_size / parameter};
  }
  throw InvalidInput("unknown sweep family");
}

std::vector<SweepRow> noise_sweep(const SweepOptions& options) {
  if (options.grid.empty()) throw InvalidInput("sweep grid is empty");
  std::vector<SweepRow> rows;
  rows.reserve(options.grid.size());
  for (double parameter : options.grid) {
    SweepRow row;
    row.parameter = parameter;
    const double eps =
        options.family == SweepFamily::kIdeal ? parameter : options.epsilon;
    const BoundsQuery query{eps, options.delta,
                            sweep_model(options.family, parameter,
                                        grid_size(eps), options.strategy)};
    switch (options.family) {
      case SweepFamily::kBan:
        row.implied_max_eta = parameter;
        break;
      case SweepFamily::kDephasing:
        row.implied_max_eta = -std::expm1(-parameter);
        break;
      case SweepFamily::kHighCoherence:
        row.implied_max_eta = parameter;
        break;
      default:
        break;
    }
    try {
      const BoundsReport plan = plan_resources(query);
      row.samples_predicted = plan.samples;
      row.grid_size = plan.grid_size;
    } catch (const BoundsUnachievable&) {
      row.achievable = false;
      row.grid_size = grid_size(eps);
    }
    if (row.achievable && options.campaign.trials > 0) {
      row.stats = monte_carlo_success(query, options.campaign);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rfe
