#include "mollow/rts_path.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mollow/error.hpp"

namespace mollow {

int RtsPath::sign_at(double t) const {
  const auto flips = std::upper_bound(flip_times.begin(), flip_times.end(), t) - flip_times.begin();
  return (flips % 2 == 0) ? initial_sign : -initial_sign;
}

namespace {

// Uniform on (0, 1]: 53 random bits, never zero so log() stays finite.
double unit_open_low(std::mt19937_64& engine) {
  return (static_cast<double>(engine() >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

RtsPath sample_rts_path(const RtsParams& rts, double t_max, std::uint64_t seed) {
  if (!(t_max > 0) || !std::isfinite(t_max)) {
    throw Error(ErrorCode::DomainError, "t_max must be finite and > 0");
  }
  std::mt19937_64 engine(splitmix64(seed));
  RtsPath path;
  path.t_max = t_max;
  path.amplitude = rts.amplitude;
  path.switch_rate = rts.switch_rate;
  path.initial_sign = (engine() >> 63) ? 1 : -1;

  const double rate = rts.flip_rate();
  if (rate > 0) {
    double t = 0.0;
    for (;;) {
      t += -std::log(unit_open_low(engine)) / rate;
      if (!(t < t_max)) break;
      if (!path.flip_times.empty() && !(t > path.flip_times.back())) continue;
      path.flip_times.push_back(t);
    }
  }
  return path;
}

}  // namespace mollow
