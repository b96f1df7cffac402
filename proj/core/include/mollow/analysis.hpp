#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mollow/spectrum_curve.hpp"

namespace mollow {

struct Peak {
  double omega = 0.0;
  double height = 0.0;
  /// Height above the higher of the two flanking minima.
  double prominence = 0.0;
  std::size_t index = 0;

  bool operator==(const Peak&) const = default;
};

struct PeakReport {
  std::vector<Peak> peaks;  // sorted by omega
  std::optional<std::size_t> central_index;  // peak nearest omega = 0
  std::optional<double> sideband_separation;
  std::optional<double> symmetry_residual;
  std::optional<double> center_of_gravity;
  /// Share of the triplet's weight in the two sideband windows.
  std::optional<double> sideband_weight_fraction;

  bool operator==(const PeakReport&) const = default;
};

/// Strict local maxima with prominence >= min_prominence. A flat top that
/// is higher than both neighbours counts once, at its leftmost sample.
/// Fills peaks, central_index, and sideband_separation when the peaks form a
/// triplet around the central one. Throws CurveTooShort for < 3 samples.
PeakReport find_peaks(const SpectrumCurve& curve, double min_prominence);

/// 1% of the curve maximum.
double default_min_prominence(const SpectrumCurve& curve);

/// Mean distance of the two side peaks from the central one. Throws
/// NotATriplet unless the report holds exactly three peaks centred on the
/// middle one.
double sideband_separation(const PeakReport& report);

/// max_i |S(omega_i) - S(-omega_i)| / max |S|. Throws AsymmetricGrid if the
/// grid is not symmetric about zero.
double symmetry_residual(const SpectrumCurve& curve);

/// First moment int omega S / int S (trapezoidal). Throws NonPositiveMass.
double center_of_gravity(const SpectrumCurve& curve);

/// Integral of the piecewise-linear interpolant over [lo, hi] clipped to the grid.
double integrate_window(const SpectrumCurve& curve, double lo, double hi);

struct TripletWeights {
  double lower = 0.0;
  double central = 0.0;
  double upper = 0.0;

  /// (lower + upper) / (lower + central + upper).
  double sideband_fraction() const;
};

/// Weights in windows of the given half-width around center - separation,
/// center, and center + separation.
TripletWeights triplet_weights(const SpectrumCurve& curve, double center, double separation,
                               double half_width);

/// Smallest peak prominence over the central height for a three-peak report,
/// 0 when the report is not a triplet.
double triplet_contrast(const PeakReport& report);

struct AnalysisOptions {
  bool peaks = true;
  bool symmetry = true;
  bool center_of_gravity = true;
  double min_prominence_fraction = 0.01;
  /// When set, sideband weight windows sit at +-separation around 0 with
  /// this half-width.
  std::optional<double> weight_separation;
  std::optional<double> weight_half_width;

  bool operator==(const AnalysisOptions&) const = default;
};

/// Runs the enabled analyses. Symmetry is skipped (left empty) on grids that
/// are not symmetric about zero.
PeakReport analyze(const SpectrumCurve& curve, const AnalysisOptions& options = {});

}  // namespace mollow
