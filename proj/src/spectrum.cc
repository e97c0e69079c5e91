#include "rfe/spectrum.h"

#include <cmath>

#include "rfe/errors.h"

namespace rfe {
namespace {

void require_grid(int grid_size) {
  if (grid_size < 1) throw InvalidInput("grid size K must be >= 1");
}

// Parity of an integer-valued double.
bool is_odd(double n) { return std::fmod(std::fabs(n), 2.0) == 1.0; }

}  // namespace

std::string_view to_string(FrequencyClass c) {
  switch (c) {
    case FrequencyClass::kClose:
      return "close";
    case FrequencyClass::kAdjacentOnly:
      return "adjacent_only";
    case FrequencyClass::kNonAdjacent:
      return "non_adjacent";
  }
  return "unknown";
}

double sin_pi(double x) {
  const double n = std::nearbyint(x);
  const double r = x - n;  // exact, |r| <= 1/2
  const double s = std::sin(kPi * r);
  return is_odd(n) ? -s : s;
}

double dirichlet_kernel(double x, int grid_size) {
  require_grid(grid_size);
  const double k = grid_size;
  // Shift x by a multiple of K into [-K/2, K/2]; each shift by K
  // multiplies the kernel by (-1)^(K-1).
  const double m = std::nearbyint(x / k);
  const double r = x - m * k;
  const double sign = (is_odd(m) && grid_size % 2 == 0) ? -1.0 : 1.0;
  if (r == 0.0) return sign;
  return sign * sin_pi(r) / (k * std::sin(kPi * r / k));
}

std::complex<double> expected_coefficient(double theta, std::int64_t j,
                                          int grid_size) {
  require_grid(grid_size);
  const double k = grid_size;
  // phi = theta - 2 pi j / K. The ratio (1 - e^{iK phi}) / (1 - e^{i phi})
  // is rewritten with 1 - e^{ia} = -2i sin(a/2) e^{ia/2} so that nothing
  // cancels near phi = 0.
  double phi = std::remainder(theta - kTwoPi * static_cast<double>(j) / k,
                              kTwoPi);
  const double den = std::sin(0.5 * phi);
  if (den == 0.0) return {1.0, 0.0};
  const double num = std::sin(0.5 * k * phi);
  return std::polar(num / (k * den), 0.5 * (k - 1.0) * phi);
}

Spectrum expected_spectrum(double theta, int grid_size) {
  require_grid(grid_size);
  Spectrum out(static_cast<std::size_t>(grid_size));
  for (int j = 0; j < grid_size; ++j) {
    out[static_cast<std::size_t>(j)] = expected_coefficient(theta, j, grid_size);
  }
  return out;
}

double grid_position(double theta, int grid_size) {
  return static_cast<double>(grid_size) * theta / kTwoPi;
}

double circular_distance(std::int64_t j, double theta, int grid_size) {
  require_grid(grid_size);
  const double k = grid_size;
  const double diff =
      std::fmod(std::fabs(static_cast<double>(j) - grid_position(theta, grid_size)), k);
  return std::min(diff, k - diff);
}

FrequencyClass classify_frequency(std::int64_t j, double theta,
                                  int grid_size) {
  const double d = circular_distance(j, theta, grid_size);
  if (d <= 0.5) return FrequencyClass::kClose;
  if (d < 1.0) return FrequencyClass::kAdjacentOnly;
  return FrequencyClass::kNonAdjacent;
}

}  // namespace rfe
