#include "rfe/sampler.h"

#include <algorithm>
#include <cmath>

#include "rfe/errors.h"

namespace rfe {

double plus_probability(double b, bool* clamped) {
  const double raw = 0.5 * (1.0 + b);
  const double p = std::clamp(raw, 0.0, 1.0);
  if (clamped != nullptr) *clamped = std::fabs(p - raw) > 1e-15;
  return p;
}

HadamardOutcome sample_pair(Bias bias, std::int64_t k, Rng& rng) {
  if (!std::isfinite(bias.x) || !std::isfinite(bias.y)) {
    throw InvalidInput("Hadamard test bias must be finite");
  }
  bool clamped_c = false;
  bool clamped_s = false;
  const double pc = plus_probability(bias.x, &clamped_c);
  const double ps = plus_probability(bias.y, &clamped_s);
  // Two separate circuit executions: one draw each.
  const int c = std::bernoulli_distribution(pc)(rng) ? 1 : -1;
  const int s = std::bernoulli_distribution(ps)(rng) ? 1 : -1;
  return {c, s, k, clamped_c || clamped_s};
}

}  // namespace rfe
