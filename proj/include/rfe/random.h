#pragma once

#include <cstdint>
#include <random>

namespace rfe {

using Rng = std::mt19937_64;

// Derives an independent stream seed from (master, index) with the
// splitmix64 finalizer. Pure, so trial seeds do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace rfe
