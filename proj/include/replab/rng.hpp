#pragma once

#include <cstdint>
#include <random>

namespace replab {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of substream `index` under `master`: mix64(mix64(master) ^ mix64(index + 1)).
// Every Monte Carlo unit draws from its own substream, so results do not depend
// on how units are distributed over workers.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) ^ mix64(index + 1));
}

inline Rng make_stream(std::uint64_t master, std::uint64_t index) {
  return Rng{substream_seed(master, index)};
}

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  return std::uniform_int_distribution<std::uint64_t>{0, bound - 1}(rng);
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>{0.0, 1.0}(rng);
}

}  // namespace replab
