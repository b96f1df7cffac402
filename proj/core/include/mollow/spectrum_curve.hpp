#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mollow/params.hpp"

namespace mollow {

enum class QuadratureScheme { GaussLegendreTruncated, AdaptiveSimpson };

std::string_view to_string(QuadratureScheme scheme) noexcept;
QuadratureScheme quadrature_scheme_from_string(std::string_view text);

/// Discretization of the thermal speed integral.
struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::GaussLegendreTruncated;
  int node_count = 96;
  /// Upper speed limit in units of v0; 0 selects sqrt(80 / c), where c v^2 / 2 = 40.
  double truncation_speed = 0.0;
  double rel_tolerance = 1e-8;

  double resolved_truncation(double thermal_c) const;
  void validate() const;

  bool operator==(const QuadratureSpec&) const = default;
};

enum class AveragingMode { FixedSpeed, Thermal, Oracle };

std::string_view to_string(AveragingMode mode) noexcept;

struct OracleProvenance {
  std::uint64_t n_trajectories = 0;
  std::uint64_t seed = 0;
  double tau_max = 0.0;
  std::string kind;
  /// Standard error of the Monte Carlo mean at each omega.
  std::vector<double> std_error;

  bool operator==(const OracleProvenance&) const = default;
};

struct CurveProvenance {
  PhysicalParams params;
  AveragingMode mode = AveragingMode::FixedSpeed;
  std::optional<RtsParams> rts;
  std::optional<QuadratureSpec> quadrature;
  /// Max relative change between n and 2n quadrature nodes over the curve.
  std::optional<double> quadrature_error;
  std::optional<OracleProvenance> oracle;

  bool operator==(const CurveProvenance&) const = default;
};

/// Sampled spectrum on a strictly increasing omega grid.
struct SpectrumCurve {
  std::vector<double> omega;
  std::vector<double> intensity;
  CurveProvenance provenance;

  std::size_t size() const noexcept { return omega.size(); }

  /// Throws InvalidGrid / NonFiniteSpectrum if the invariants do not hold.
  void validate() const;

  bool operator==(const SpectrumCurve&) const = default;
};

/// `count` points from lo to hi. Grids with lo == -hi come out exactly
/// antisymmetric (omega[i] == -omega[n-1-i]).
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

/// Throws InvalidGrid unless the grid is non-empty, finite and strictly increasing.
void validate_grid(std::span<const double> grid);

}  // namespace mollow
