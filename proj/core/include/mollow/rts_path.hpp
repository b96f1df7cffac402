#pragma once

#include <cstdint>
#include <vector>

#include "mollow/params.hpp"

namespace mollow {

/// One realization of the two-state telegraph noise on [0, t_max].
///
/// x(t) = amplitude * initial_sign * (-1)^(number of flips <= t).
struct RtsPath {
  int initial_sign = 1;
  std::vector<double> flip_times;  // strictly increasing, all < t_max
  double t_max = 0.0;
  double amplitude = 0.0;
  double switch_rate = 0.0;

  int sign_at(double t) const;
  double value_at(double t) const { return amplitude * sign_at(t); }
};

/// Seed of trajectory `index` within a run seeded with `seed`: seed XOR index.
constexpr std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return seed ^ index;
}

/// SplitMix64 finalizer, used to spread nearby seeds before seeding mt19937_64.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Samples a stationary path: equiprobable initial sign, flips as a Poisson
/// process of rate rts.flip_rate() (= switch_rate / 2). Deterministic in seed.
RtsPath sample_rts_path(const RtsParams& rts, double t_max, std::uint64_t seed);

}  // namespace mollow
