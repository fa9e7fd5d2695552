#pragma once

#include <cstdint>

#include "rwre/lattice.hpp"

namespace rwre {

// SplitMix64 mix function. Used both as a stateful generator and as the
// counter-based hash behind deterministic lazy environments.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (b + 0x632be59bd9b4e019ull + (a << 6) + (a >> 2)));
}

// Deterministic site hash: a pure function of (seed, coordinates).
inline std::uint64_t hash_site(std::uint64_t seed, const Point& x, int dim) {
  std::uint64_t h = splitmix64(seed ^ 0x243f6a8885a308d3ull);
  for (int i = 0; i < dim; ++i) {
    h = hash_combine(h, static_cast<std::uint64_t>(x[i]));
  }
  return h;
}

// 53-bit mantissa double in [0, 1).
inline double u01_from_bits(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Minimal stateful generator for walk randomness. Replaying the same state
// reproduces the identical stream.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit constexpr SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double next_u01() { return u01_from_bits(next()); }
};

}  // namespace rwre
