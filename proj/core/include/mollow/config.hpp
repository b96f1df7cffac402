#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mollow/oracle.hpp"
#include "mollow/params.hpp"
#include "mollow/spectrum_curve.hpp"

namespace mollow {

enum class CurveFormat { Csv, Json };

std::string_view to_string(CurveFormat format) noexcept;
CurveFormat curve_format_from_string(std::string_view text);

struct GridSpec {
  double min = -10.0;
  double max = 10.0;
  std::size_t count = 2001;

  std::vector<double> points() const { return linear_grid(min, max, count); }

  bool operator==(const GridSpec&) const = default;
};

struct OracleSettings {
  std::uint64_t n_traj = 2000;
  std::uint64_t seed = 1;
  CorrelationKind kind = CorrelationKind::DipoleKernel;
  double tau_max = 0.0;
  double burn_in = 0.0;
  std::size_t tau_points = 4001;

  bool operator==(const OracleSettings&) const = default;
};

struct AnalysisToggles {
  bool peaks = true;
  bool symmetry = true;
  bool center_of_gravity = true;
  /// Report the sideband weight fraction in windows at +-sqrt(W^2 + D^2)
  /// with half-width max(gamma, 0.2 * that separation).
  bool sideband_weights = false;
  double min_prominence_fraction = 0.01;

  bool operator==(const AnalysisToggles&) const = default;
};

struct Scenario {
  std::string name;  // file stem, unique within a config
  std::string description;
  PhysicalParams params;
  GridSpec grid;
  AveragingMode mode = AveragingMode::Thermal;
  double speed = 0.0;  // fixed_v and oracle: Maxwell-Boltzmann speed in units of v0
  QuadratureSpec quadrature;
  OracleSettings oracle;
  AnalysisToggles analysis;

  bool operator==(const Scenario&) const = default;
};

struct RunConfig {
  std::vector<Scenario> scenarios;
  std::string output_directory = "out";
  std::vector<CurveFormat> formats{CurveFormat::Csv};
  bool gnuplot = false;

  /// Throws ValidationError naming the offending key.
  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

/// Parses the YAML run document (schema in docs/config_schema.md). Missing
/// keys take their defaults; unknown keys are rejected. Throws ParseError
/// (with line:column) or ValidationError (with the key path).
RunConfig parse_config(std::string_view text);

/// Serializes a config so that parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);

}  // namespace mollow
