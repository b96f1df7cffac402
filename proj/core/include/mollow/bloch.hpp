#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mollow/params.hpp"
#include "mollow/rts_path.hpp"

namespace mollow {

/// Two-level density matrix in the frame rotating at the laser frequency.
///
/// Equations of motion, with d(t) = detuning + x(t):
///   d rho_eg / dt = -(gamma + i d) rho_eg - i (W/2) (rho_gg - rho_ee)
///   d rho_ee / dt = -2 gamma rho_ee + i (W/2) (rho_eg - rho_ge)
/// where W is the Rabi frequency, coherences decay at gamma and the excited
/// population at 2 gamma = A.
struct BlochState {
  std::complex<double> coherence;  // rho_eg = <sigma_minus>
  double excited = 0.0;
  double ground = 1.0;

  static BlochState ground_state() { return {{0.0, 0.0}, 0.0, 1.0}; }
  static BlochState excited_state() { return {{0.0, 0.0}, 1.0, 0.0}; }

  /// Throws NonPhysicalState if the populations leave [0, 1], do not sum to
  /// one, or |coherence|^2 exceeds excited * ground, each beyond `tolerance`.
  void check_physical(double tolerance = 1e-9) const;
};

/// Exact piecewise propagation under one noise path: the generator is
/// constant between flips, so each segment is a matrix exponential.
/// `t_grid` must be nondecreasing within [0, path.t_max]; state0 is at t = 0.
/// The Rabi frequency may be zero here (free decay).
std::vector<BlochState> propagate_bloch(const PhysicalParams& params, const RtsPath& path,
                                        const BlochState& state0, std::span<const double> t_grid);

}  // namespace mollow
