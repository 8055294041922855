#pragma once

#include <cmath>
#include <cstdint>

namespace causeway {

// Counter-based noise primitives. Every exogenous draw is a pure function of
// (seed, variable index, outcome key), so contexts are reproducible across
// runs and threads and coordinates can be evaluated lazily for spaces too
// large to materialize.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return splitmix64(seed ^ splitmix64(salt));
}

// Uniform in the open interval (0,1); never returns 0 or 1 exactly.
inline double unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

inline double noise_uniform(std::uint64_t seed, std::uint32_t var_index,
                            std::uint64_t outcome_key) {
  std::uint64_t h = splitmix64(seed ^ (static_cast<std::uint64_t>(var_index) * kGolden));
  h = splitmix64(h ^ (outcome_key * 0xC2B2AE3D27D4EB4Full));
  return unit_open(h);
}

// Standard Gumbel(0,1) draw for one noise coordinate.
inline double noise_gumbel(std::uint64_t seed, std::uint32_t var_index,
                           std::uint64_t outcome_key) {
  return -std::log(-std::log(noise_uniform(seed, var_index, outcome_key)));
}

}  // namespace causeway
