#include "mollow/spectrum_curve.hpp"

#include <cmath>
#include <string>

#include "mollow/error.hpp"

namespace mollow {

std::string_view to_string(QuadratureScheme scheme) noexcept {
  return scheme == QuadratureScheme::GaussLegendreTruncated ? "gauss_legendre" : "adaptive_simpson";
}

QuadratureScheme quadrature_scheme_from_string(std::string_view text) {
  if (text == "gauss_legendre") return QuadratureScheme::GaussLegendreTruncated;
  if (text == "adaptive_simpson") return QuadratureScheme::AdaptiveSimpson;
  throw Error(ErrorCode::ValidationError,
              "scheme must be 'gauss_legendre' or 'adaptive_simpson', got '" + std::string(text) +
                  "'");
}

std::string_view to_string(AveragingMode mode) noexcept {
  switch (mode) {
    case AveragingMode::FixedSpeed: return "fixed_v";
    case AveragingMode::Thermal: return "thermal";
    case AveragingMode::Oracle: return "oracle";
  }
  return "unknown";
}

double QuadratureSpec::resolved_truncation(double thermal_c) const {
  return truncation_speed > 0 ? truncation_speed : std::sqrt(80.0 / thermal_c);
}

void QuadratureSpec::validate() const {
  if (node_count < 8) {
    throw Error(ErrorCode::ValidationError,
                "node_count must be >= 8 (got " + std::to_string(node_count) + ")");
  }
  if (!(truncation_speed >= 0) || !std::isfinite(truncation_speed)) {
    throw Error(ErrorCode::ValidationError, "truncation_speed must be finite and >= 0 (0 = default)");
  }
  if (!(rel_tolerance > 0)) {
    throw Error(ErrorCode::ValidationError, "rel_tolerance must be > 0");
  }
}

void SpectrumCurve::validate() const {
  if (omega.size() != intensity.size()) {
    throw Error(ErrorCode::InvalidGrid, "omega and intensity lengths differ");
  }
  validate_grid(omega);
  for (std::size_t i = 0; i < intensity.size(); ++i) {
    if (!std::isfinite(intensity[i])) {
      throw Error(ErrorCode::NonFiniteSpectrum,
                  "intensity at omega=" + std::to_string(omega[i]) + " is not finite");
    }
  }
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (count == 0) throw Error(ErrorCode::InvalidGrid, "grid count must be >= 1");
  if (count == 1) return {lo};
  if (!(lo < hi)) throw Error(ErrorCode::InvalidGrid, "grid requires min < max");
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double last = static_cast<double>(count - 1);
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double offset = 2.0 * static_cast<double>(i) - last;
    grid[i] = mid + half * offset / last;
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

void validate_grid(std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorCode::InvalidGrid, "omega grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw Error(ErrorCode::InvalidGrid, "omega grid has a non-finite value");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw Error(ErrorCode::InvalidGrid,
                  "omega grid is not strictly increasing at index " + std::to_string(i));
    }
  }
}

}  // namespace mollow
