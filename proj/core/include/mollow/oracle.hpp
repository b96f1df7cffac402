#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mollow/params.hpp"
#include "mollow/spectrum_curve.hpp"

namespace mollow {

/// Which two-time quantity the Monte Carlo estimates.
///
/// DipoleKernel: K(tau) = Tr[sigma_plus U(t + tau, t) sigma_minus], the
///   regression propagator of the dipole started from sigma_minus itself.
///   Its noise average is the kernel whose Laplace image the closed-form
///   spectrum evaluates, so this is the kind used for verification.
/// Emission: the stationary field correlation <sigma_plus(t + tau) sigma_minus(t)>,
///   regressed from sigma_minus rho(t) after a burn-in under the same path.
enum class CorrelationKind { DipoleKernel, Emission };

std::string_view to_string(CorrelationKind kind) noexcept;
CorrelationKind correlation_kind_from_string(std::string_view text);

struct OracleOptions {
  CorrelationKind kind = CorrelationKind::DipoleKernel;
  double burn_in = 0.0;          // 0 selects 20 / gamma
  double tau_max = 0.0;          // 0 selects 30 / gamma
  std::size_t tau_points = 4001; // Emission spectra: uniform tau samples
  unsigned threads = 0;          // 0 = resolve_thread_count()

  double resolved_burn_in(double gamma) const { return burn_in > 0 ? burn_in : 20.0 / gamma; }
  double resolved_tau_max(double gamma) const { return tau_max > 0 ? tau_max : 30.0 / gamma; }
};

/// Trajectories are reduced in fixed blocks of this many, in index order,
/// so results do not depend on the thread count.
inline constexpr std::size_t kTrajectoryBlock = 64;

struct CorrelationEstimate {
  std::vector<double> tau_grid;
  std::vector<std::complex<double>> values;
  /// sqrt(var Re + var Im) / sqrt(n) across trajectories.
  std::vector<double> std_error;
  std::uint64_t n_trajectories = 0;
  std::uint64_t seed = 0;
  CorrelationKind kind = CorrelationKind::DipoleKernel;
  /// Emission kind: mean excited population at the start of the tau window.
  double mean_excited_population = 0.0;
  double excited_population_std_error = 0.0;
};

/// Monte Carlo two-time correlation on `tau_grid` (starting at 0).
/// Trajectory i uses sample_rts_path(..., trajectory_seed(seed, i)).
/// Throws InsufficientEquilibration (Emission kind) if the ensemble-mean
/// excited population still drifts by more than 1e-4 (relative, beyond
/// three standard errors) over the last 10% of the burn-in.
CorrelationEstimate correlation_function(const PhysicalParams& params, const RtsParams& rts,
                                         std::span<const double> tau_grid, std::uint64_t n_traj,
                                         std::uint64_t seed, const OracleOptions& options = {});

/// Monte Carlo spectrum 2 Re int_0^inf C(tau) exp(-i omega tau) dtau.
///
/// DipoleKernel: the Fourier integral is done exactly per trajectory, segment
///   by segment, so the only error is statistical; std errors come from the
///   spread of per-trajectory spectra.
/// Emission: the plateau (mean of the last 10% of the tau window) is
///   subtracted and the integral is a trapezoid rule on a uniform tau grid;
///   the error band is the propagated bound 2 sum_j w_j se_j.
/// Throws PlateauNotReached if the correlation has not settled by tau_max.
SpectrumCurve oracle_spectrum(const PhysicalParams& params, const RtsParams& rts,
                              std::span<const double> omega_grid, std::uint64_t n_traj,
                              std::uint64_t seed, const OracleOptions& options = {});

}  // namespace mollow
