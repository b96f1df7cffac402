#include "mollow/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mollow/error.hpp"

namespace mollow {

std::string_view to_string(UnitScale scale) noexcept {
  return scale == UnitScale::Gamma ? "gamma" : "rabi";
}

UnitScale unit_scale_from_string(std::string_view text) {
  if (text == "gamma") return UnitScale::Gamma;
  if (text == "rabi") return UnitScale::Rabi;
  throw Error(ErrorCode::ValidationError,
              "unit_scale must be 'gamma' or 'rabi', got '" + std::string(text) + "'");
}

namespace {

void require(bool ok, const char* key, const char* what, double value) {
  if (!ok) {
    throw Error(ErrorCode::ValidationError,
                std::string(key) + " " + what + " (got " + std::to_string(value) + ")");
  }
}

}  // namespace

void PhysicalParams::validate() const {
  require(std::isfinite(rabi_frequency) && rabi_frequency > 0, "rabi_frequency",
          "must be finite and > 0", rabi_frequency);
  require(std::isfinite(detuning), "detuning", "must be finite", detuning);
  require(std::isfinite(gamma) && gamma > 0, "gamma", "must be finite and > 0", gamma);
  require(std::isfinite(wave_number) && wave_number >= 0, "wave_number",
          "must be finite and >= 0", wave_number);
  require(std::isfinite(collision_density) && collision_density >= 0, "collision_density",
          "must be finite and >= 0", collision_density);
  require(std::isfinite(thermal_c) && thermal_c > 0, "thermal_c", "must be finite and > 0",
          thermal_c);
}

RtsParams RtsParams::from_speed(const PhysicalParams& params, double speed) {
  if (!(speed >= 0) || !std::isfinite(speed)) {
    throw Error(ErrorCode::DomainError, "speed must be finite and >= 0");
  }
  RtsParams rts;
  rts.speed = speed;
  rts.amplitude = params.wave_number * speed;
  rts.switch_rate = std::numbers::pi * params.collision_density * speed;
  return rts;
}

RtsParams RtsParams::from_thermal_speed(const PhysicalParams& params, double thermal_speed) {
  return from_speed(params, thermal_speed * params.gamma);
}

}  // namespace mollow
