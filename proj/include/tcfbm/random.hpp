#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tcfbm {

// Random source used throughout. Every sampler takes it by reference and is a
// pure function of its arguments and the engine state.
using Rng = std::mt19937_64;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Engine for substream `index` of `master_seed`. Depends only on the pair, so
// ensemble path i is reproducible regardless of how paths are scheduled.
Rng substream(std::uint64_t master_seed, std::uint64_t index);

// Uniform on the open interval (0,1), 53-bit resolution.
inline double uniform_open(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double standard_exponential(Rng& rng) {
    return -std::log(uniform_open(rng));
}

}  // namespace tcfbm
