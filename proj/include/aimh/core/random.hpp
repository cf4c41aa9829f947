#pragma once

#include <cstdint>
#include <random>

namespace aimh {

using Rng = std::mt19937_64;

// Child seed for stream `index` of a run seeded with `master`:
//   child = splitmix64(master ^ splitmix64(index + 0x9e3779b97f4a7c15)).
// Chains of one ensemble use index = chain number.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

std::uint64_t splitmix64(std::uint64_t x);

// Uniform on [0, 1).
inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double standard_normal(Rng& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace aimh
