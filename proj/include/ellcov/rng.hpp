#pragma once

#include <cstdint>
#include <random>

namespace ellcov {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent generator keyed by (master seed, stream index). Stream 0 is reserved for
/// scenario-level draws (random orthogonal factors); replicate r uses stream r + 1.
inline Rng substream(std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t a = mix64(seed ^ mix64(stream));
  const std::uint64_t b = mix64(a + stream);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Rng(seq);
}

}  // namespace ellcov
