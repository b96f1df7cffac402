#pragma once

#include <string_view>

namespace mollow {

/// Which frequency sets the scale of the omega axis. Purely a labelling
/// convention: all quantities are already expressed in that unit.
enum class UnitScale { Gamma, Rabi };

std::string_view to_string(UnitScale scale) noexcept;
UnitScale unit_scale_from_string(std::string_view text);

/// Physical constants of one scenario in reduced units.
///
/// Frequencies (rabi_frequency, detuning, gamma, omega) share one unit. The
/// wave number k and collision density b = n_p r0^2 are in 1/r0, and
/// thermal_c = m/(k_B T) is in 1/v0^2 with the thermal velocity unit
/// v0 = gamma * r0.
struct PhysicalParams {
  double rabi_frequency = 1.0;
  double detuning = 0.0;  // atomic minus laser frequency
  double gamma = 1.0;     // half the Einstein A coefficient
  double wave_number = 0.0;
  double collision_density = 0.0;
  double thermal_c = 1.0;
  UnitScale unit_scale = UnitScale::Gamma;

  /// Throws Error(ValidationError) naming the offending field.
  void validate() const;

  bool operator==(const PhysicalParams&) const = default;
};

/// Telegraph-noise parameters for one molecular speed.
///
/// `speed` is in r0 x (frequency unit), so amplitude = k * speed and
/// switch_rate = pi * b * speed hold exactly. switch_rate is 1/tau_a, the
/// decay rate of the noise autocorrelation a^2 exp(-|t|/tau_a); individual
/// sign flips therefore occur at Poisson rate switch_rate / 2.
struct RtsParams {
  double amplitude = 0.0;
  double switch_rate = 0.0;
  double speed = 0.0;

  /// Builds from a speed already expressed in r0 x (frequency unit).
  static RtsParams from_speed(const PhysicalParams& params, double speed);

  /// Builds from a Maxwell-Boltzmann speed in units of v0 = gamma * r0.
  static RtsParams from_thermal_speed(const PhysicalParams& params, double thermal_speed);

  /// Poisson rate of individual sign flips.
  double flip_rate() const noexcept { return 0.5 * switch_rate; }

  bool operator==(const RtsParams&) const = default;
};

}  // namespace mollow
