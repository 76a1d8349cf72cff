#pragma once

#include <cstdint>
#include <random>

namespace risd2d {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer applied to (seed, stream). Gives statistically
/// independent substreams that depend only on the pair, never on how work
/// is scheduled across threads.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(derive_seed(seed, stream));
}

/// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
/// Used instead of std::uniform_real_distribution so that sequences are
/// identical across standard library implementations.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal draw (Marsaglia polar method, one value per call).
double standard_normal(Rng& rng);

}  // namespace risd2d
