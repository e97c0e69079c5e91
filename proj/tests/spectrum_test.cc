#include "rfe/spectrum.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace rfe {
namespace {

// Independent oracle: the K-term sum evaluated term by term.
std::complex<double> direct_sum(double theta, int j, int grid) {
  std::complex<double> acc{0.0, 0.0};
  for (int k = 0; k < grid; ++k) {
    acc += std::exp(std::complex<double>(0.0, k * theta)) *
           std::exp(std::complex<double>(0.0, -kTwoPi * j * k / grid));
  }
  return acc / static_cast<double>(grid);
}

TEST(DirichletKernel, Examples) {
  EXPECT_EQ(dirichlet_kernel(0.0, 8), 1.0);
  EXPECT_EQ(dirichlet_kernel(1.0, 8), 0.0);
  EXPECT_NEAR(dirichlet_kernel(0.5, 1000),
              std::sin(kPi * 0.5) / (1000.0 * std::sin(kPi * 0.5 / 1000.0)), 1e-15);
  EXPECT_NEAR(dirichlet_kernel(0.5, 1000), 2.0 / kPi, 1e-5);
  EXPECT_EQ(dirichlet_kernel(8.0, 8), -1.0);
}

TEST(DirichletKernel, SingularitiesMatchTheirLimits) {
  // (-1)^(m (K - 1)) at x = m K.
  EXPECT_EQ(dirichlet_kernel(7.0, 7), 1.0);
  EXPECT_EQ(dirichlet_kernel(16.0, 8), 1.0);
  EXPECT_EQ(dirichlet_kernel(-8.0, 8), -1.0);
  for (int grid : {3, 4, 8, 9}) {
    for (int m : {-2, -1, 1, 2}) {
      const double x = static_cast<double>(m) * grid;
      EXPECT_NEAR(dirichlet_kernel(x + 1e-7, grid), dirichlet_kernel(x, grid), 1e-6)
          << "K=" << grid << " m=" << m;
    }
  }
}

TEST(DirichletKernel, MagnitudeIsPeriodicInK) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> xs(-300.0, 300.0);
  std::uniform_int_distribution<int> ks(1, 200);
  for (int i = 0; i < 2000; ++i) {
    const double x = xs(rng);
    const int grid = ks(rng);
    EXPECT_NEAR(std::fabs(dirichlet_kernel(x, grid)),
                std::fabs(dirichlet_kernel(x + grid, grid)), 1e-12);
  }
}

TEST(ExpectedCoefficient, OnGridPeakAndOrthogonality) {
  const double theta = kTwoPi * 3 / 8;
  const auto peak = expected_coefficient(theta, 3, 8);
  EXPECT_EQ(peak.real(), 1.0);
  EXPECT_EQ(peak.imag(), 0.0);
  EXPECT_NEAR(std::abs(expected_coefficient(theta, 5, 8)), 0.0, 1e-15);
}

TEST(ExpectedCoefficient, MagnitudeEqualsKernel) {
  const double theta = 2.25;
  const int grid = 79;
  EXPECT_NEAR(std::abs(expected_coefficient(theta, 28, grid)),
              std::fabs(dirichlet_kernel(28 - grid * theta / kTwoPi, grid)), 1e-12);

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> thetas(0.0, kTwoPi);
  std::uniform_int_distribution<int> ks(1, 256);
  for (int i = 0; i < 500; ++i) {
    const int g = ks(rng);
    const double t = thetas(rng);
    const int j = std::uniform_int_distribution<int>(0, g - 1)(rng);
    EXPECT_NEAR(std::abs(expected_coefficient(t, j, g)),
                std::fabs(dirichlet_kernel(j - g * t / kTwoPi, g)), 1e-12);
  }
}

TEST(ExpectedCoefficient, MatchesDirectSummation) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> thetas(0.0, kTwoPi);
  std::uniform_int_distribution<int> ks(1, 256);
  for (int i = 0; i < 300; ++i) {
    const int g = ks(rng);
    const double t = thetas(rng);
    const int j = std::uniform_int_distribution<int>(0, g - 1)(rng);
    EXPECT_LT(std::abs(expected_coefficient(t, j, g) - direct_sum(t, j, g)), 1e-12)
        << "theta=" << t << " j=" << j << " K=" << g;
  }
}

TEST(ExpectedCoefficient, StableJustOffGrid) {
  // 1 - e^{i phi} cancels catastrophically here if evaluated literally.
  for (double offset : {1e-6, 1e-9, 1e-12, -1e-10}) {
    const double theta = kTwoPi * 5 / 64 + offset;
    EXPECT_LT(std::abs(expected_coefficient(theta, 5, 64) - direct_sum(theta, 5, 64)),
              1e-12)
        << offset;
  }
}

TEST(ExpectedSpectrum, Examples) {
  const Spectrum flat = expected_spectrum(0.0, 8);
  ASSERT_EQ(flat.size(), 8u);
  EXPECT_EQ(flat[0], std::complex<double>(1.0, 0.0));
  for (int j = 1; j < 8; ++j) EXPECT_NEAR(std::abs(flat[j]), 0.0, 1e-15);

  const Spectrum tone = expected_spectrum(kTwoPi * 3 / 8, 8);
  for (int j = 0; j < 8; ++j) {
    EXPECT_NEAR(std::abs(tone[j]), j == 3 ? 1.0 : 0.0, 1e-15);
  }

  const Spectrum fig = expected_spectrum(2.25, 79);
  int best = 0;
  for (int j = 1; j < 79; ++j) {
    if (std::abs(fig[j]) > std::abs(fig[best])) best = j;
  }
  EXPECT_EQ(best, 28);
}

TEST(ClassifyFrequency, Examples) {
  EXPECT_NEAR(circular_distance(28, 2.25, 79), 79 * 2.25 / kTwoPi - 28, 1e-12);
  EXPECT_EQ(classify_frequency(28, 2.25, 79), FrequencyClass::kClose);
  EXPECT_EQ(classify_frequency(29, 2.25, 79), FrequencyClass::kAdjacentOnly);
  EXPECT_EQ(classify_frequency(30, 2.25, 79), FrequencyClass::kNonAdjacent);
}

TEST(ClassifyFrequency, BoundariesAndWrap) {
  // K = 4, theta = pi/4 puts Theta at exactly 0.5.
  EXPECT_EQ(classify_frequency(0, kPi / 4, 4), FrequencyClass::kClose);
  EXPECT_EQ(classify_frequency(1, kPi / 4, 4), FrequencyClass::kClose);
  EXPECT_EQ(classify_frequency(2, kPi / 4, 4), FrequencyClass::kNonAdjacent);
  // Theta = 1: neighbours at distance exactly 1 are non-adjacent.
  EXPECT_EQ(classify_frequency(0, kPi / 2, 4), FrequencyClass::kNonAdjacent);
  EXPECT_EQ(classify_frequency(2, kPi / 2, 4), FrequencyClass::kNonAdjacent);
  // Wrap-around: with Theta = 0.2, j = K-1 sits at circular distance 1.2.
  EXPECT_NEAR(circular_distance(9, kTwoPi * 0.2 / 10, 10), 1.2, 1e-12);
}

TEST(ClassifyFrequency, InvariantUnderShiftByK) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> thetas(0.0, kTwoPi);
  for (int i = 0; i < 1000; ++i) {
    const int g = std::uniform_int_distribution<int>(1, 300)(rng);
    const double t = thetas(rng);
    const int j = std::uniform_int_distribution<int>(0, g - 1)(rng);
    EXPECT_EQ(classify_frequency(j, t, g), classify_frequency(j + g, t, g));
    EXPECT_EQ(classify_frequency(j, t, g), classify_frequency(j + 3 * g, t, g));
  }
}

TEST(ExpectedSpectrum, CloseAndNonAdjacentBoundsOnSmallGrid) {
  // The full K = 4..128 scan runs in the acceptance suite.
  for (int g = 4; g <= 40; ++g) {
    for (int i = 0; i <= 300; ++i) {
      const double t = kPi * i / 300.0;
      for (int j = 0; j < g; ++j) {
        const double mag = std::abs(expected_coefficient(t, j, g));
        EXPECT_LE(mag, 1.0 + 1e-15);
        switch (classify_frequency(j, t, g)) {
          case FrequencyClass::kClose:
            EXPECT_GE(mag, 2.0 / kPi - 1e-12);
            break;
          case FrequencyClass::kNonAdjacent:
            EXPECT_LE(mag, 1.0 / (2.0 * std::sqrt(2.0)) + 1e-12);
            EXPECT_LE(mag, 10.0 / (9.0 * kPi) + 1e-12);
            break;
          case FrequencyClass::kAdjacentOnly:
            break;
        }
      }
    }
  }
}

}  // namespace
}  // namespace rfe
