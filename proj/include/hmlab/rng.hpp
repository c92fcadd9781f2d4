#pragma once
// Counter-based pseudorandom stream (splitmix64 finalizer). Draw j is a pure
// function of (seed, j), so any sharding of the counter range across workers
// reproduces the same sample set. Not cryptographic; statistical quality is
// ample for Monte Carlo acceptance sampling.

#include <cstdint>

namespace hmlab::rng {

using u64 = std::uint64_t;

inline u64 splitmix64(u64 x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct CounterStream {
  u64 seed;
  // Raw 64-bit draw at counter position j.
  u64 at(u64 j) const { return splitmix64(seed ^ (0x9E3779B97F4A7C15ULL + splitmix64(j))); }
};

// Map a raw draw to [0, n) by the multiply-shift trick. Bias is < n / 2^64,
// immaterial for the lattice sizes used here (n <= 2^21).
inline u64 bounded(u64 raw, u64 n) {
  return (u64)(((unsigned __int128)raw * n) >> 64);
}

}  // namespace hmlab::rng
