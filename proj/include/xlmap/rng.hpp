#pragma once

#include <cstdint>
#include <random>

#include "xlmap/types.hpp"

namespace xlmap {

// std::mt19937_64 has a standard-specified output sequence, so seeded runs are
// reproducible across compilers and platforms.
using Rng = std::mt19937_64;

// splitmix64-style mixer; decorrelates nearby (seed, salt) pairs.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t salt = 0) {
  return Rng(mix_seed(seed, salt));
}

// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline Index uniform_index(Rng& rng, Index n) {
  return static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
}

Matrix random_gaussian(Index rows, Index cols, Rng& rng);

// Haar-distributed orthogonal matrix (QR of a Gaussian with sign fix).
Matrix random_orthogonal(Index dim, Rng& rng);

}  // namespace xlmap
