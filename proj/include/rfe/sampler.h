#pragma once

#include <cstdint>

#include "rfe/noise.h"
#include "rfe/random.h"

namespace rfe {

// One real (c) and one imaginary (s) Hadamard test at time k.
struct HadamardOutcome {
  int c;
  int s;
  std::int64_t k;
  bool clamped;
};

// Pr(+1) = clamp((1 + b) / 2, 0, 1). Sets *clamped when clamping moved the
// value by more than 1e-15.
double plus_probability(double b, bool* clamped = nullptr);

// Draws c and s independently. Throws InvalidInput on non-finite biases.
HadamardOutcome sample_pair(Bias bias, std::int64_t k, Rng& rng);

}  // namespace rfe
