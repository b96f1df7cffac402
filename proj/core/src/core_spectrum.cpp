#include "mollow/core_spectrum.hpp"

#include <cmath>
#include <string>

#include "mollow/error.hpp"

namespace mollow {

namespace {

constexpr cdouble kI{0.0, 1.0};

std::string at_omega(double omega) { return " at omega=" + std::to_string(omega); }

}  // namespace

GammaSet damping_coefficients(const PhysicalParams& params, const RtsParams& rts, cdouble z,
                              double pole_guard) {
  const double g = params.gamma;
  const double delta = params.detuning;
  const double rabi2 = params.rabi_frequency * params.rabi_frequency;
  const double a2 = rts.amplitude * rts.amplitude;
  const cdouble zr = z + rts.switch_rate;  // z + 1/tau_a

  GammaSet out{};
  out.at_z = z;
  out.p_denominator =
      zr * ((zr + g + kI * delta) * ((zr + g - kI * delta) * (zr + 2.0 * g) + rabi2) -
            kI * delta * rabi2);

  if (a2 != 0.0) {
    // z == -1/tau_a exactly (static noise at omega = 0): the zr factor shared by
    // P and the numerators cancels analytically, so divide by P / zr instead.
    const bool removable = zr == cdouble{0.0, 0.0};
    const cdouble denominator =
        removable ? (zr + g + kI * delta) * ((zr + g - kI * delta) * (zr + 2.0 * g) + rabi2) -
                        kI * delta * rabi2
                  : out.p_denominator;
    if (!(std::abs(denominator) >= pole_guard)) {
      throw Error(ErrorCode::DegenerateDenominator,
                  "|P| = " + std::to_string(std::abs(denominator)) +
                      " below pole guard; z sits on a pole of the noise-averaged propagator");
    }
    const cdouble scale = removable ? cdouble{a2, 0.0} : a2 / denominator * zr;
    out.gamma11 = scale * ((zr + g - kI * delta) * (zr + 2.0 * g) + 0.5 * rabi2);
    out.gamma33 = scale * ((zr + g + kI * delta) * (zr + 2.0 * g) + 0.5 * rabi2);
    out.gamma13 = -0.5 * scale * rabi2;
  }

  const cdouble diff = out.gamma11 - out.gamma33;
  out.n_term = -((z + 2.0 * g) * (0.25 * diff * diff -
                                  kI * delta * (out.gamma33 + 2.0 * out.gamma13 - out.gamma11)) +
                 kI * delta * rabi2);
  return out;
}

cdouble laplace_image(const PhysicalParams& params, const RtsParams& rts, cdouble z,
                      double pole_guard) {
  const GammaSet gs = damping_coefficients(params, rts, z, pole_guard);
  const double g = params.gamma;
  const double delta = params.detuning;
  const double rabi2 = params.rabi_frequency * params.rabi_frequency;
  const cdouble mean_diag = 0.5 * (gs.gamma11 + gs.gamma33);

  const cdouble numerator = (z + 2.0 * g) * (z + g + gs.gamma11 + kI * delta) + 0.5 * rabi2;
  const cdouble first = z + g + mean_diag + gs.gamma13 + kI * delta;
  const cdouble second = (z + 2.0 * g) * (z + g + mean_diag - gs.gamma13 - kI * delta) + rabi2;
  return numerator / (first * second + gs.n_term);
}

double spectrum_at(const PhysicalParams& params, const RtsParams& rts, double omega) {
  double value = 0.0;
  try {
    value = 2.0 * laplace_image(params, rts, cdouble{0.0, omega}).real();
  } catch (const Error& e) {
    throw Error(e.code(), e.message() + at_omega(omega));
  }
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::NonFiniteSpectrum, "spectrum is not finite" + at_omega(omega));
  }
  return value;
}

SpectrumCurve spectrum_curve_fixed_v(const PhysicalParams& params, const RtsParams& rts,
                                     std::span<const double> omega_grid) {
  params.validate();
  validate_grid(omega_grid);
  SpectrumCurve curve;
  curve.omega.assign(omega_grid.begin(), omega_grid.end());
  curve.intensity.reserve(omega_grid.size());
  for (const double omega : omega_grid) {
    curve.intensity.push_back(spectrum_at(params, rts, omega));
  }
  curve.provenance.params = params;
  curve.provenance.mode = AveragingMode::FixedSpeed;
  curve.provenance.rts = rts;
  return curve;
}

}  // namespace mollow
