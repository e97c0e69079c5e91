#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

namespace rfe {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Spectrum = std::vector<std::complex<double>>;

enum class FrequencyClass { kClose, kAdjacentOnly, kNonAdjacent };

std::string_view to_string(FrequencyClass c);

// sin(pi x) computed with exact zeros at the integers.
double sin_pi(double x);

// S_K(x) = sin(pi x) / (K sin(pi x / K)). Removable singularities at x = mK
// evaluate to their limit (-1)^(m (K - 1)).
double dirichlet_kernel(double x, int grid_size);

// Expected value of the single-sample coefficient estimate at frequency j:
//   (1/K) sum_k e^{ik theta} e^{-2 pi i j k / K}
// evaluated in closed form. Exactly 1 when theta lies on grid point j.
std::complex<double> expected_coefficient(double theta, std::int64_t j,
                                          int grid_size);

Spectrum expected_spectrum(double theta, int grid_size);

// Theta expressed in grid units, K theta / 2 pi.
double grid_position(double theta, int grid_size);

// min(|j - Theta| mod K, K - (|j - Theta| mod K)).
double circular_distance(std::int64_t j, double theta, int grid_size);

// Close iff distance <= 1/2, AdjacentOnly iff 1/2 < distance < 1,
// NonAdjacent otherwise.
FrequencyClass classify_frequency(std::int64_t j, double theta, int grid_size);

}  // namespace rfe
