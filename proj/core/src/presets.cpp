#include "mollow/presets.hpp"

#include <cmath>

#include "mollow/error.hpp"

namespace mollow {

namespace {

constexpr double kCollisionDensity = 0.9;
constexpr double kThermalC = 1.6e-4;

std::string detuning_tag(double detuning) {
  if (detuning == 0.0) return "d0";
  return std::string(detuning < 0 ? "dm" : "dp") + std::to_string(static_cast<int>(std::abs(detuning)));
}

RunConfig fig1a() {
  RunConfig config;
  config.output_directory = "out/fig1a";
  for (const double rabi : {4.0, 6.0, 8.0}) {
    Scenario s;
    s.name = "fig1a_rabi" + std::to_string(static_cast<int>(rabi));
    s.description = "gamma units, weak collisional broadening";
    s.params.rabi_frequency = rabi;
    s.params.gamma = 1.0;
    s.params.wave_number = 0.01;
    s.params.collision_density = kCollisionDensity;
    s.params.thermal_c = kThermalC;
    s.params.unit_scale = UnitScale::Gamma;
    s.grid = {-12.0, 12.0, 2401};
    config.scenarios.push_back(s);
  }
  return config;
}

RunConfig rabi_units(const std::string& name, double gamma, double k, const std::string& description) {
  RunConfig config;
  config.output_directory = "out/" + name;
  for (const double detuning : {-1.0, 0.0, 1.0}) {
    Scenario s;
    s.name = name + "_" + detuning_tag(detuning);
    s.description = description;
    s.params.rabi_frequency = 1.0;
    s.params.detuning = detuning;
    s.params.gamma = gamma;
    s.params.wave_number = k;
    s.params.collision_density = kCollisionDensity;
    s.params.thermal_c = kThermalC;
    s.params.unit_scale = UnitScale::Rabi;
    s.grid = {-4.0, 4.0, 1601};
    s.analysis.sideband_weights = true;
    config.scenarios.push_back(s);
  }
  return config;
}

}  // namespace

std::vector<std::string> preset_names() { return {"fig1a", "fig1b", "fig2a", "fig2b"}; }

RunConfig preset(std::string_view name) {
  if (name == "fig1a") return fig1a();
  if (name == "fig1b") return rabi_units("fig1b", 0.2, 0.01, "Rabi units, detuning scan, k = 0.01");
  if (name == "fig2a") return rabi_units("fig2a", 0.2, 0.2, "Rabi units, detuning scan, k = 0.2");
  if (name == "fig2b") return rabi_units("fig2b", 0.4, 0.2, "Rabi units, detuning scan, k = 0.2, gamma = 0.4");
  throw Error(ErrorCode::ValidationError, "unknown preset '" + std::string(name) + "'");
}

}  // namespace mollow
