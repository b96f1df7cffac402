#pragma once

#include <span>
#include <vector>

#include "mollow/params.hpp"
#include "mollow/spectrum_curve.hpp"

namespace mollow {

/// Maxwell-Boltzmann speed density 4 pi (c / 2 pi)^{3/2} v^2 exp(-c v^2 / 2).
/// Throws DomainError for v < 0 or c <= 0.
double maxwell_boltzmann_pdf(double v, double thermal_c);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped onto [lo, hi].
QuadratureRule gauss_legendre(int n, double lo, double hi);

/// Speed nodes with the Maxwell-Boltzmann density folded into the weights.
/// Independent of omega, so one instance serves a whole curve.
class ThermalNodes {
 public:
  ThermalNodes(double thermal_c, double truncation_speed, int node_count);

  std::span<const double> speeds() const noexcept { return speeds_; }
  std::span<const double> weights() const noexcept { return weights_; }

  /// Sum of weights, i.e. the quadrature of the density itself.
  double total_mass() const noexcept;

 private:
  std::vector<double> speeds_;
  std::vector<double> weights_;
};

/// Quadrature of the density over [0, v_max] under the given spec.
double density_mass(double thermal_c, const QuadratureSpec& quad);

/// Thermal spectrum at one omega. The Gauss-Legendre scheme is cross-checked
/// against 2n nodes; the adaptive scheme refines to rel_tolerance. Throws
/// QuadratureNotConverged with the error estimate when that check fails.
double averaged_spectrum(const PhysicalParams& params, double omega, const QuadratureSpec& quad);

/// averaged_spectrum over a grid with nodes built once. The n-vs-2n error
/// estimate (max over the curve) is stored in the provenance.
SpectrumCurve averaged_spectrum_curve(const PhysicalParams& params,
                                      std::span<const double> omega_grid,
                                      const QuadratureSpec& quad);

}  // namespace mollow
