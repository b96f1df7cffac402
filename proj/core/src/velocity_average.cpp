#include "mollow/velocity_average.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "mollow/core_spectrum.hpp"
#include "mollow/error.hpp"

namespace mollow {

double maxwell_boltzmann_pdf(double v, double thermal_c) {
  if (!(v >= 0)) throw Error(ErrorCode::DomainError, "speed must be >= 0");
  if (!(thermal_c > 0)) throw Error(ErrorCode::DomainError, "thermal_c must be > 0");
  const double norm = 4.0 * std::numbers::pi * std::pow(thermal_c / (2.0 * std::numbers::pi), 1.5);
  return norm * v * v * std::exp(-0.5 * thermal_c * v * v);
}

QuadratureRule gauss_legendre(int n, double lo, double hi) {
  if (n < 1) throw Error(ErrorCode::DomainError, "Gauss-Legendre needs n >= 1");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

ThermalNodes::ThermalNodes(double thermal_c, double truncation_speed, int node_count) {
  const QuadratureRule rule = gauss_legendre(node_count, 0.0, truncation_speed);
  speeds_ = rule.nodes;
  weights_.resize(rule.weights.size());
  for (std::size_t i = 0; i < speeds_.size(); ++i) {
    weights_[i] = rule.weights[i] * maxwell_boltzmann_pdf(speeds_[i], thermal_c);
  }
}

double ThermalNodes::total_mass() const noexcept {
  double sum = 0.0;
  for (const double w : weights_) sum += w;
  return sum;
}

namespace {

using Integrand = std::function<double(double)>;

double integrate_nodes(const ThermalNodes& nodes, const Integrand& fn) {
  double sum = 0.0;
  const auto v = nodes.speeds();
  const auto w = nodes.weights();
  for (std::size_t i = 0; i < v.size(); ++i) sum += w[i] * fn(v[i]);
  return sum;
}

struct SimpsonResult {
  double value;
  double error;
};

double simpson(double fa, double fm, double fb, double width) {
  return width / 6.0 * (fa + 4.0 * fm + fb);
}

void simpson_recurse(const Integrand& fn, double a, double b, double fa, double fm, double fb,
                     double whole, double tol, int depth, SimpsonResult& acc) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = fn(lm);
  const double frm = fn(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) {
    acc.value += left + right + diff / 15.0;
    acc.error += std::abs(diff) / 15.0;
    return;
  }
  simpson_recurse(fn, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, acc);
  simpson_recurse(fn, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, acc);
}

// Integrates fn(v) * f(v) over [0, v_max]; fn is evaluated on the speed in v0 units.
SimpsonResult adaptive_simpson(const Integrand& fn, double thermal_c, double v_max,
                               double rel_tol, int panels) {
  const auto weighted = [&](double v) { return fn(v) * maxwell_boltzmann_pdf(v, thermal_c); };
  // Coarse pass fixes the absolute tolerance.
  const ThermalNodes coarse(thermal_c, v_max, 32);
  const double scale = std::abs(integrate_nodes(coarse, fn));
  const double tol = std::max(rel_tol * scale, 1e-300);

  SimpsonResult acc{0.0, 0.0};
  const double width = v_max / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = p * width;
    const double b = (p + 1) * width;
    const double fa = weighted(a);
    const double fm = weighted(0.5 * (a + b));
    const double fb = weighted(b);
    simpson_recurse(weighted, a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol / panels, 40, acc);
  }
  return acc;
}

double relative_change(double coarse, double fine) {
  const double denom = std::max(std::abs(fine), 1e-300);
  return std::abs(coarse - fine) / denom;
}

Integrand spectrum_integrand(const PhysicalParams& params, double omega) {
  return [&params, omega](double v) {
    return spectrum_at(params, RtsParams::from_thermal_speed(params, v), omega);
  };
}

double zero_noise_spectrum(const PhysicalParams& params, double omega) {
  return spectrum_at(params, RtsParams::from_speed(params, 0.0), omega);
}

}  // namespace

double density_mass(double thermal_c, const QuadratureSpec& quad) {
  quad.validate();
  const double v_max = quad.resolved_truncation(thermal_c);
  const Integrand one = [](double) { return 1.0; };
  if (quad.scheme == QuadratureScheme::AdaptiveSimpson) {
    return adaptive_simpson(one, thermal_c, v_max, quad.rel_tolerance, 16).value;
  }
  return ThermalNodes(thermal_c, v_max, quad.node_count).total_mass();
}

double averaged_spectrum(const PhysicalParams& params, double omega, const QuadratureSpec& quad) {
  params.validate();
  quad.validate();
  // k = 0 switches the noise off for every speed; the average is the identity.
  if (params.wave_number == 0.0) return zero_noise_spectrum(params, omega);

  const double v_max = quad.resolved_truncation(params.thermal_c);
  const Integrand fn = spectrum_integrand(params, omega);
  if (quad.scheme == QuadratureScheme::AdaptiveSimpson) {
    const SimpsonResult r = adaptive_simpson(fn, params.thermal_c, v_max, quad.rel_tolerance, 16);
    if (!(r.error <= quad.rel_tolerance * std::abs(r.value))) {
      throw Error(ErrorCode::QuadratureNotConverged,
                  "adaptive Simpson error estimate " + std::to_string(r.error) +
                      " at omega=" + std::to_string(omega));
    }
    return r.value;
  }
  const double value = integrate_nodes(ThermalNodes(params.thermal_c, v_max, quad.node_count), fn);
  const double refined =
      integrate_nodes(ThermalNodes(params.thermal_c, v_max, 2 * quad.node_count), fn);
  const double err = relative_change(value, refined);
  if (!(err <= quad.rel_tolerance)) {
    throw Error(ErrorCode::QuadratureNotConverged,
                "n vs 2n relative change " + std::to_string(err) + " at omega=" +
                    std::to_string(omega));
  }
  return value;
}

SpectrumCurve averaged_spectrum_curve(const PhysicalParams& params,
                                      std::span<const double> omega_grid,
                                      const QuadratureSpec& quad) {
  params.validate();
  quad.validate();
  validate_grid(omega_grid);

  SpectrumCurve curve;
  curve.omega.assign(omega_grid.begin(), omega_grid.end());
  curve.intensity.reserve(omega_grid.size());
  curve.provenance.params = params;
  curve.provenance.mode = AveragingMode::Thermal;
  curve.provenance.quadrature = quad;

  if (params.wave_number == 0.0) {
    for (const double omega : omega_grid) curve.intensity.push_back(zero_noise_spectrum(params, omega));
    curve.provenance.quadrature_error = 0.0;
    return curve;
  }

  const double v_max = quad.resolved_truncation(params.thermal_c);
  if (quad.scheme == QuadratureScheme::AdaptiveSimpson) {
    double worst = 0.0;
    for (const double omega : omega_grid) {
      const SimpsonResult r =
          adaptive_simpson(spectrum_integrand(params, omega), params.thermal_c, v_max,
                           quad.rel_tolerance, 16);
      const double rel = r.error / std::max(std::abs(r.value), 1e-300);
      if (!(rel <= quad.rel_tolerance)) {
        throw Error(ErrorCode::QuadratureNotConverged,
                    "adaptive Simpson error estimate " + std::to_string(r.error) +
                        " at omega=" + std::to_string(omega));
      }
      worst = std::max(worst, rel);
      curve.intensity.push_back(r.value);
    }
    curve.provenance.quadrature_error = worst;
    return curve;
  }

  const ThermalNodes nodes(params.thermal_c, v_max, quad.node_count);
  const ThermalNodes refined(params.thermal_c, v_max, 2 * quad.node_count);
  double worst = 0.0;
  for (const double omega : omega_grid) {
    const Integrand fn = spectrum_integrand(params, omega);
    const double value = integrate_nodes(nodes, fn);
    const double check = integrate_nodes(refined, fn);
    worst = std::max(worst, relative_change(value, check));
    curve.intensity.push_back(value);
  }
  if (!(worst <= quad.rel_tolerance)) {
    throw Error(ErrorCode::QuadratureNotConverged,
                "n vs 2n relative change " + std::to_string(worst) + " exceeds rel_tolerance");
  }
  curve.provenance.quadrature_error = worst;
  return curve;
}

}  // namespace mollow
