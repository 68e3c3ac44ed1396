#pragma once

#include <cstdint>
#include <random>

namespace sped {

// splitmix64 step; used to decorrelate user seeds and replicate indices.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Child stream for one Monte Carlo replicate. Each replicate owns its
// generator, so the parallel schedule cannot change the draws.
inline std::uint64_t replicate_seed(std::uint64_t base_seed, std::uint64_t replicate_index) {
  return splitmix64(splitmix64(base_seed) ^ splitmix64(replicate_index + 0x9E3779B97F4A7C15ull));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

}  // namespace sped
