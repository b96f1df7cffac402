#pragma once

#include <complex>
#include <span>

#include "mollow/params.hpp"
#include "mollow/spectrum_curve.hpp"

namespace mollow {

using cdouble = std::complex<double>;

inline constexpr double kDefaultPoleGuard = 1e-300;

/// Noise-induced damping coefficients at one Laplace argument.
///
/// gamma13 doubles as gamma31. When the noise amplitude is zero every
/// gamma is exactly zero and the division by P is skipped.
struct GammaSet {
  cdouble gamma11;
  cdouble gamma33;
  cdouble gamma13;
  cdouble p_denominator;
  cdouble n_term;
  cdouble at_z;
};

/// Evaluates Gamma11, Gamma33, Gamma13, the common denominator P and the
/// coupling term N for the telegraph-averaged Bloch equations.
///
/// Throws DegenerateDenominator if a > 0 and |P| < pole_guard.
GammaSet damping_coefficients(const PhysicalParams& params, const RtsParams& rts, cdouble z,
                              double pole_guard = kDefaultPoleGuard);

/// Laplace image of the noise-averaged dipole kernel:
///
///   [(z + 2g)(z + g + G11 + iD) + W^2/2] / [A * B + N]
///   A = z + g + (G11 + G33)/2 + G13 + iD
///   B = (z + 2g)(z + g + (G11 + G33)/2 - G13 - iD) + W^2
///
/// with g = gamma, D = detuning, W = Rabi frequency. The spectrum is
/// twice its real part on the imaginary axis.
cdouble laplace_image(const PhysicalParams& params, const RtsParams& rts, cdouble z,
                      double pole_guard = kDefaultPoleGuard);

/// Fixed-speed spectrum S_RTS(v, omega) = 2 Re laplace_image(i omega).
/// omega is measured from the laser frequency.
double spectrum_at(const PhysicalParams& params, const RtsParams& rts, double omega);

/// spectrum_at over a grid; errors carry the offending omega.
SpectrumCurve spectrum_curve_fixed_v(const PhysicalParams& params, const RtsParams& rts,
                                     std::span<const double> omega_grid);

}  // namespace mollow
