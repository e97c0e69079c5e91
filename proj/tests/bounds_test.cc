#include "rfe/bounds.h"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "rfe/errors.h"
#include "rfe/spectrum.h"

namespace rfe {
namespace {

TEST(GridSize, Examples) {
  EXPECT_EQ(grid_size(0.1), 63);
  EXPECT_EQ(grid_size(0.08), 79);
  EXPECT_EQ(grid_size(kPi / 2), 4);
  EXPECT_THROW(grid_size(0.0), InvalidInput);
  EXPECT_THROW(grid_size(-1.0), InvalidInput);
}

TEST(SamplesNoiseless, Examples) {
  EXPECT_EQ(samples_noiseless(0.1, 0.1), 3130);
  const double direct = 81.0 * kPi * kPi / 2.0 * std::log(8.0 * kPi / (0.05 * 0.02));
  EXPECT_EQ(samples_noiseless(0.02, 0.05), static_cast<std::int64_t>(std::ceil(direct)));
  EXPECT_THROW(samples_noiseless(kPi / 2, 0.1), InvalidInput);
  EXPECT_THROW(samples_noiseless(0.1, 0.0), InvalidInput);
  EXPECT_THROW(samples_noiseless(0.1, 1.0), InvalidInput);
}

TEST(SamplesNoiseless, MonotoneInTargets) {
  for (double eps = 0.01; eps < 1.5; eps *= 1.3) {
    for (double delta = 0.001; delta < 0.9; delta *= 1.7) {
      const auto m = samples_noiseless(eps, delta);
      EXPECT_GE(m, samples_noiseless(eps * 1.3 < 1.5 ? eps * 1.3 : eps, delta));
      EXPECT_GE(m, samples_noiseless(eps, delta * 1.7 < 0.9 ? delta * 1.7 : delta));
    }
  }
}

TEST(SamplesBan, Examples) {
  EXPECT_EQ(samples_ban(0.1, 0.1, 0.0), 3130);
  EXPECT_EQ(samples_ban(0.1, 0.1, 0.05), 12510);
  EXPECT_NEAR(ban_inflation(0.05), 3.997191, 1e-6);
  EXPECT_EQ(ban_inflation(0.0), 1.0);
  EXPECT_THROW(samples_ban(0.1, 0.1, 0.12), BoundsUnachievable);
  EXPECT_THROW(samples_ban(0.1, 0.1, ban_threshold()), BoundsUnachievable);
  EXPECT_THROW(samples_ban(0.1, 0.1, -0.01), InvalidInput);
}

TEST(SamplesBan, DivergesBelowThresholdAndNeverOverflows) {
  std::int64_t prev = 0;
  for (int n = 1; n <= 6; ++n) {
    const auto m = samples_ban(0.1, 0.1, ban_threshold() * (1.0 - std::pow(10.0, -n)));
    EXPECT_GT(m, prev);
    prev = m;
  }
  EXPECT_GT(prev, 1000000000000LL);
  EXPECT_THROW(samples_ban(0.1, 0.1, std::nextafter(ban_threshold(), 0.0)),
               BoundsUnachievable);
}

TEST(SamplesBan, MonotoneInNoise) {
  std::int64_t prev = 0;
  for (double eta = 0.0; eta < 0.1; eta += 0.002) {
    const auto m = samples_ban(0.1, 0.1, eta);
    EXPECT_GE(m, prev);
    prev = m;
  }
}

TEST(SamplesGaussian, Examples) {
  EXPECT_EQ(samples_gaussian(0.1, 0.1, 0.0), 3407);
  EXPECT_EQ(samples_gaussian(0.1, 0.1, 0.1), 3559);
  EXPECT_EQ(samples_gaussian(0.1, 0.1, 1.0), 5543);
  EXPECT_NEAR(gaussian_inflation(0.1, 0.1, 1.0), 1.6269, 1e-4);
  EXPECT_THROW(samples_gaussian(0.1, 0.1, 5.0), BoundsUnachievable);
  EXPECT_THROW(samples_gaussian(0.1, 0.1, -0.5), InvalidInput);
}

TEST(SamplesGaussian, MonotoneInSigma) {
  std::int64_t prev = 0;
  for (double sigma = 0.0; sigma < 4.6; sigma += 0.1) {
    const auto m = samples_gaussian(0.1, 0.1, sigma);
    EXPECT_GE(m, prev);
    prev = m;
  }
}

TEST(SigmaMax, ValueAndScaling) {
  EXPECT_NEAR(sigma_max(0.1, 0.1), 4.6298, 1e-4);
  // Halving epsilon raises sigma_max by more than sqrt(2) (log factor).
  for (double eps : {0.4, 0.2, 0.1, 0.05}) {
    EXPECT_GT(sigma_max(eps / 2, 0.1) / sigma_max(eps, 0.1), std::sqrt(2.0));
  }
}

TEST(SamplesGaussianRederived, ComparedWithPrinted) {
  EXPECT_EQ(samples_gaussian_rederived(0.1, 0.1, 0.0), samples_gaussian(0.1, 0.1, 0.0));
  for (double sigma : {0.05, 0.1, 0.2}) {
    EXPECT_GT(samples_gaussian_rederived(0.1, 0.1, sigma), samples_gaussian(0.1, 0.1, sigma));
  }
  EXPECT_THROW(samples_gaussian_rederived(0.1, 0.1, 1.0), BoundsUnachievable);
}

TEST(InspecFailureBound, Examples) {
  EXPECT_EQ(inspec_failure_bound(0, 63), 1.0);
  // With K rounded up to 63 the bound sits a hair above delta.
  EXPECT_NEAR(inspec_failure_bound(3130, 63), 0.10015, 1e-5);
  EXPECT_LE(inspec_failure_bound(3130, kTwoPi / 0.1), 0.1);
  EXPECT_LE(inspec_failure_bound(12510, kTwoPi / 0.1, 0.05), 0.1);
  EXPECT_EQ(inspec_failure_bound(100, 63, 0.2), 1.0);
  EXPECT_THROW(inspec_failure_bound(-1, 63), InvalidInput);
}

TEST(InspecFailureBound, PlannedCountsMeetDelta) {
  for (double eps = 0.02; eps < 1.5; eps *= 1.4) {
    for (double delta : {0.001, 0.01, 0.1, 0.5}) {
      const double k_exact = kTwoPi / eps;
      EXPECT_LE(inspec_failure_bound(samples_noiseless(eps, delta), k_exact), delta);
      EXPECT_LE(inspec_failure_bound(samples_noiseless(eps, delta), grid_size(eps)),
                delta * grid_size(eps) / k_exact + 1e-15);
      EXPECT_LE(inspec_failure_bound(samples_ban(eps, delta, 0.04), k_exact, 0.04),
                delta);
    }
  }
}

TEST(GaussianEtabar, Values) {
  EXPECT_EQ(gaussian_etabar(0.0, 63, 0.1), 0.0);
  EXPECT_NEAR(gaussian_etabar(1.0, 63, 0.1), std::sqrt(std::log(5040.0) / 252.0), 1e-15);
  EXPECT_NEAR(gaussian_etabar(1.0, 63, 0.1), 0.183929, 1e-6);
  EXPECT_NEAR(gaussian_etabar(3.0, 63, 0.1), 3.0 * gaussian_etabar(1.0, 63, 0.1), 1e-15);
}

TEST(ExpectedTotalDepth, Values) {
  EXPECT_EQ(expected_total_depth(3130, 63), 97030.0);
  EXPECT_EQ(expected_total_depth(500, 1), 0.0);
}

TEST(PlanResources, Ideal) {
  const BoundsReport r = plan_resources({0.1, 0.1, noise::Ideal{}});
  EXPECT_FALSE(r.trivial);
  EXPECT_EQ(r.grid_size, 63);
  EXPECT_EQ(r.samples, 3130);
  EXPECT_EQ(r.inflation_factor, 1.0);
  EXPECT_EQ(r.expected_total_depth, 97030.0);
  EXPECT_FALSE(r.effective_eta_bar.has_value());
  EXPECT_TRUE(r.thresholds.count("inspec_failure_bound"));
}

TEST(PlanResources, Trivial) {
  const BoundsReport r = plan_resources({2.0, 0.1, noise::Ideal{}});
  EXPECT_TRUE(r.trivial);
  EXPECT_EQ(r.samples, 0);
}

TEST(PlanResources, NoiseMappings) {
  const BoundsReport ban = plan_resources({0.1, 0.1, noise::Ban{0.05}});
  EXPECT_EQ(ban.samples, 12510);
  EXPECT_EQ(*ban.effective_eta_bar, 0.05);

  const BoundsReport g = plan_resources({0.1, 0.1, noise::Gaussian{1.0}});
  EXPECT_EQ(g.samples, 5543);
  EXPECT_NEAR(g.thresholds.at("gaussian_eta_bar"), 0.183929, 1e-6);
  EXPECT_FALSE(g.thresholds.count("inspec_failure_bound"));

  const BoundsReport gl = plan_resources({0.1, 0.1, noise::GaussianLinear{0.01}});
  EXPECT_NEAR(gl.thresholds.at("sigma_effective"), 0.01 * 63 / std::sqrt(3.0), 1e-15);
  EXPECT_EQ(gl.samples, samples_gaussian(0.1, 0.1, 0.01 * 63 / std::sqrt(3.0)));

  const BoundsReport d = plan_resources({0.1, 0.1, noise::Dephasing{1000.0}});
  EXPECT_NEAR(*d.effective_eta_bar, 1.0 - std::exp(-0.063), 1e-15);
  EXPECT_EQ(d.samples, samples_ban(0.1, 0.1, 1.0 - std::exp(-0.063)));

  const BoundsReport h = plan_resources({0.1, 0.1, noise::HighCoherence{1000.0}});
  EXPECT_EQ(*h.effective_eta_bar, 0.063);

  const BoundsReport inf =
      plan_resources({0.1, 0.1, noise::Dephasing{std::numeric_limits<double>::infinity()}});
  EXPECT_EQ(inf.samples, 3130);
}

TEST(PlanResources, PastThreshold) {
  EXPECT_THROW(plan_resources({0.1, 0.1, noise::Ban{0.15}}), BoundsUnachievable);
  EXPECT_THROW(plan_resources({0.1, 0.1, noise::Dephasing{100.0}}), BoundsUnachievable);
  EXPECT_THROW(plan_resources({0.1, 0.1, noise::HighCoherence{600.0}}), BoundsUnachievable);
  EXPECT_THROW(plan_resources({0.1, 0.1, noise::Gaussian{5.0}}), BoundsUnachievable);
  EXPECT_THROW(plan_resources({0.1, 1.5, noise::Ideal{}}), InvalidInput);
}

TEST(HighCoherenceReport, Ratios) {
  const HighCoherenceReport r = high_coherence_report(0.1);
  EXPECT_EQ(r.grid_size, 63);
  EXPECT_NEAR(r.t2_over_k_eta, 9.9965, 1e-4);
  EXPECT_NEAR(r.t2_over_k_half_eta, 4.998, 1e-3);
}

TEST(DeltaForSamples, InvertsNoiselessCount) {
  EXPECT_NEAR(delta_for_samples(0.08, 3200), 0.1048, 1e-4);
  const double d = delta_for_samples(0.1, 3130);
  EXPECT_LE(d, 0.1);
  EXPECT_EQ(samples_noiseless(0.1, d), 3130);
}

}  // namespace
}  // namespace rfe
