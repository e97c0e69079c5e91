#include "rfe/bounds.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rfe/errors.h"
#include "rfe/spectrum.h"

namespace rfe {
namespace {

// 81 pi^2 / 2
const double kSampleScale = 81.0 * kPi * kPi / 2.0;
// 9 pi / (2 sqrt 2), the reciprocal of ban_threshold().
const double kBanSlope = 9.0 * kPi / (2.0 * std::sqrt(2.0));

void require_epsilon(double epsilon) {
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw InvalidInput("epsilon must be finite and > 0");
  }
}

void require_sampling_query(double epsilon, double delta) {
  require_epsilon(epsilon);
  if (epsilon >= kPi / 2.0) {
    throw InvalidInput("epsilon must be < pi/2 (larger targets need no sampling)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidInput("delta must lie in (0, 1)");
  }
}

std::int64_t ceil_count(double v) {
  // 2^62 leaves headroom for M (K - 1) style products downstream.
  if (!(v < 0x1p62)) {
    throw BoundsUnachievable("sample count is not representable; the noise "
                             "parameter is too close to its threshold");
  }
  return static_cast<std::int64_t>(std::ceil(v));
}

std::string describe(const char* what, double value, const char* bound_name,
                     double bound) {
  std::ostringstream os;
  os.precision(9);
  os << what << " = " << value << " is at or above the threshold "
     << bound_name << " = " << bound << "; no sample count guarantees success";
  return os.str();
}

void require_below_ban_threshold(double eta_bar, const char* what) {
  if (!std::isfinite(eta_bar) || eta_bar < 0.0) {
    throw InvalidInput(std::string(what) + " must be finite and >= 0");
  }
  if (eta_bar >= ban_threshold()) {
    throw BoundsUnachievable(
        describe(what, eta_bar, "2 sqrt(2)/(9 pi)", ban_threshold()));
  }
}

double gaussian_log(double epsilon, double delta) {
  return std::log(16.0 * kPi / (delta * epsilon));
}

void require_below_sigma_max(double epsilon, double delta, double sigma) {
  if (!std::isfinite(sigma) || sigma < 0.0) {
    throw InvalidInput("sigma must be finite and >= 0");
  }
  const double bound = sigma_max(epsilon, delta);
  if (sigma >= bound) {
    throw BoundsUnachievable(describe("sigma", sigma, "sigma_max", bound));
  }
}

}  // namespace

int grid_size(double epsilon) {
  require_epsilon(epsilon);
  return static_cast<int>(std::ceil(kTwoPi / epsilon));
}

std::int64_t samples_noiseless(double epsilon, double delta) {
  require_sampling_query(epsilon, delta);
  return ceil_count(kSampleScale * std::log(8.0 * kPi / (delta * epsilon)));
}

double ban_inflation(double eta_bar) {
  require_below_ban_threshold(eta_bar, "eta_bar");
  const double gap = 1.0 - kBanSlope * eta_bar;
  return 1.0 / (gap * gap);
}

std::int64_t samples_ban(double epsilon, double delta, double eta_bar) {
  require_sampling_query(epsilon, delta);
  return ceil_count(kSampleScale * ban_inflation(eta_bar) *
                    std::log(8.0 * kPi / (delta * epsilon)));
}

double sigma_max(double epsilon, double delta) {
  require_epsilon(epsilon);
  return std::sqrt(64.0 / (81.0 * kPi * epsilon) *
                   gaussian_log(epsilon, delta));
}

double gaussian_inflation(double epsilon, double delta, double sigma) {
  require_sampling_query(epsilon, delta);
  require_below_sigma_max(epsilon, delta, sigma);
  const double log_term = gaussian_log(epsilon, delta);
  const double gap =
      1.0 - (9.0 * sigma / 8.0) * std::sqrt(epsilon * kPi / log_term);
  return 1.0 / (gap * gap);
}

std::int64_t samples_gaussian(double epsilon, double delta, double sigma) {
  const double factor = gaussian_inflation(epsilon, delta, sigma);
  return ceil_count(kSampleScale * gaussian_log(epsilon, delta) * factor);
}

double gaussian_inflation_rederived(double epsilon, double delta,
                                    double sigma) {
  require_sampling_query(epsilon, delta);
  if (!std::isfinite(sigma) || sigma < 0.0) {
    throw InvalidInput("sigma must be finite and >= 0");
  }
  const double shift =
      (9.0 * sigma / 8.0) * std::sqrt(epsilon * kPi * gaussian_log(epsilon, delta));
  if (shift >= 1.0) {
    throw BoundsUnachievable(describe("(9 sigma/8) sqrt(eps pi L)", shift, "1", 1.0));
  }
  return 1.0 / ((1.0 - shift) * (1.0 - shift));
}

std::int64_t samples_gaussian_rederived(double epsilon, double delta,
                                        double sigma) {
  const double factor = gaussian_inflation_rederived(epsilon, delta, sigma);
  return ceil_count(kSampleScale * gaussian_log(epsilon, delta) * factor);
}

double inspec_failure_bound(std::int64_t samples, double grid_size,
                            std::optional<double> eta_bar) {
  if (samples < 0 || !(grid_size >= 1.0)) {
    throw InvalidInput("inspec_failure_bound needs M >= 0 and K >= 1");
  }
  double gap = 1.0;
  if (eta_bar) {
    if (*eta_bar >= ban_threshold()) return 1.0;
    gap = 1.0 - kBanSlope * *eta_bar;
  }
  const double bound =
      4.0 * grid_size *
      std::exp(-2.0 * static_cast<double>(samples) * gap * gap /
               (81.0 * kPi * kPi));
  return std::min(1.0, bound);
}

double gaussian_etabar(double sigma, int grid_size, double delta) {
  if (!std::isfinite(sigma) || sigma < 0.0) {
    throw InvalidInput("sigma must be finite and >= 0");
  }
  if (grid_size < 1) throw InvalidInput("grid size K must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidInput("delta must lie in (0, 1)");
  }
  const double k = grid_size;
  return std::sqrt(sigma * sigma / (4.0 * k) * std::log(8.0 * k / delta));
}

double expected_total_depth(std::int64_t samples, int grid_size) {
  return static_cast<double>(samples) * (grid_size - 1) / 2.0;
}

BoundsReport plan_resources(const BoundsQuery& query) {
  require_epsilon(query.epsilon);
  if (!(query.delta > 0.0 && query.delta < 1.0)) {
    throw InvalidInput("delta must lie in (0, 1)");
  }
  validate(query.noise);

  BoundsReport report;
  report.thresholds["ban_eta_bar"] = ban_threshold();
  report.thresholds["dephasing_ratio_paper"] = dephasing_ratio_threshold_paper();
  report.thresholds["dephasing_ratio_derived"] =
      dephasing_ratio_threshold_derived();
  report.thresholds["sigma_max"] = sigma_max(query.epsilon, query.delta);

  if (query.epsilon >= kPi / 2.0) {
    report.trivial = true;
    return report;
  }

  const double eps = query.epsilon;
  const double delta = query.delta;
  const int grid = grid_size(eps);
  report.grid_size = grid;

  auto use_ban = [&](double eta_bar, const char* what) {
    require_below_ban_threshold(eta_bar, what);
    report.effective_eta_bar = eta_bar;
    report.inflation_factor = ban_inflation(eta_bar);
    report.samples = samples_ban(eps, delta, eta_bar);
  };

  if (std::holds_alternative<noise::Ideal>(query.noise)) {
    report.samples = samples_noiseless(eps, delta);
  } else if (const auto* m = std::get_if<noise::Ban>(&query.noise)) {
    use_ban(m->eta_bar, "eta_bar");
  } else if (const auto* m = std::get_if<noise::Gaussian>(&query.noise)) {
    report.inflation_factor = gaussian_inflation(eps, delta, m->sigma);
    report.samples = samples_gaussian(eps, delta, m->sigma);
    report.thresholds["gaussian_eta_bar"] = gaussian_etabar(m->sigma, grid, delta);
  } else if (const auto* m = std::get_if<noise::GaussianLinear>(&query.noise)) {
    // sigma_k = k sigma gives Var(eta_hat_j) <= 2 K sigma^2 / 3, the same
    // spectral variance as a flat model with sigma K / sqrt(3).
    const double effective = m->sigma * grid / std::sqrt(3.0);
    report.thresholds["sigma_effective"] = effective;
    report.inflation_factor = gaussian_inflation(eps, delta, effective);
    report.samples = samples_gaussian(eps, delta, effective);
  } else if (const auto* m = std::get_if<noise::Dephasing>(&query.noise)) {
    // |eta_1k| = (1 - e^{-k/T2}) |cos k theta| <= 1 - e^{-K/T2}.
    report.thresholds["depth_to_t2_ratio"] = grid / m->t2;
    use_ban(-std::expm1(-grid / m->t2), "1 - exp(-K/T2)");
  } else if (const auto* m = std::get_if<noise::HighCoherence>(&query.noise)) {
    report.thresholds["depth_to_t2_ratio"] = grid / m->t2;
    use_ban(grid / m->t2, "K/T2");
  }
  report.expected_total_depth = expected_total_depth(report.samples, grid);
  if (!needs_run_noise(query.noise)) {
    report.thresholds["inspec_failure_bound"] = inspec_failure_bound(
        report.samples, grid, report.effective_eta_bar);
  }
  return report;
}

HighCoherenceReport high_coherence_report(double epsilon) {
  return {epsilon, grid_size(epsilon), 1.0 / ban_threshold(),
          1.0 / (2.0 * ban_threshold())};
}

double delta_for_samples(double epsilon, double samples) {
  require_epsilon(epsilon);
  return 8.0 * kPi / (epsilon * std::exp(samples / kSampleScale));
}

}  // namespace rfe
