#include "mollow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mollow/error.hpp"

namespace mollow {

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (const double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool grid_is_symmetric(const std::vector<double>& omega) {
  const double scale = std::max(1.0, max_abs(omega));
  const std::size_t n = omega.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(omega[i] + omega[n - 1 - i]) > 1e-9 * scale) return false;
  }
  return true;
}

double prominence_at(const std::vector<double>& y, std::size_t left, std::size_t right) {
  const double top = y[left];
  double left_min = top;
  for (std::size_t k = left; k-- > 0;) {
    if (y[k] > top) break;
    left_min = std::min(left_min, y[k]);
  }
  double right_min = top;
  for (std::size_t k = right + 1; k < y.size(); ++k) {
    if (y[k] > top) break;
    right_min = std::min(right_min, y[k]);
  }
  return top - std::max(left_min, right_min);
}

}  // namespace

PeakReport find_peaks(const SpectrumCurve& curve, double min_prominence) {
  const auto& y = curve.intensity;
  const auto& x = curve.omega;
  if (y.size() < 3 || x.size() != y.size()) {
    throw Error(ErrorCode::CurveTooShort, "peak finding needs at least 3 samples");
  }
  PeakReport report;
  std::size_t i = 1;
  while (i + 1 < y.size()) {
    if (y[i] > y[i - 1]) {
      std::size_t run_end = i;
      while (run_end + 1 < y.size() && y[run_end + 1] == y[i]) ++run_end;
      if (run_end + 1 < y.size() && y[run_end + 1] < y[i]) {
        const double prom = prominence_at(y, i, run_end);
        if (prom >= min_prominence) report.peaks.push_back({x[i], y[i], prom, i});
      }
      i = run_end + 1;
    } else {
      ++i;
    }
  }

  if (!report.peaks.empty()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < report.peaks.size(); ++k) {
      if (std::abs(report.peaks[k].omega) < std::abs(report.peaks[best].omega)) best = k;
    }
    report.central_index = best;
  }
  if (report.peaks.size() == 3 && report.central_index == 1u) {
    report.sideband_separation = sideband_separation(report);
  }
  return report;
}

double default_min_prominence(const SpectrumCurve& curve) {
  double m = -std::numeric_limits<double>::infinity();
  for (const double v : curve.intensity) m = std::max(m, v);
  return 0.01 * m;
}

double sideband_separation(const PeakReport& report) {
  if (report.peaks.size() != 3 || report.central_index != 1u) {
    throw Error(ErrorCode::NotATriplet,
                "expected three peaks around a central one, got " +
                    std::to_string(report.peaks.size()));
  }
  const double centre = report.peaks[1].omega;
  return 0.5 * (std::abs(report.peaks[0].omega - centre) + std::abs(report.peaks[2].omega - centre));
}

double symmetry_residual(const SpectrumCurve& curve) {
  if (curve.omega.empty() || !grid_is_symmetric(curve.omega)) {
    throw Error(ErrorCode::AsymmetricGrid, "omega grid is not symmetric about 0");
  }
  const auto& y = curve.intensity;
  const double scale = max_abs(y);
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n / 2; ++i) worst = std::max(worst, std::abs(y[i] - y[n - 1 - i]));
  return worst / scale;
}

double center_of_gravity(const SpectrumCurve& curve) {
  const auto& x = curve.omega;
  const auto& y = curve.intensity;
  double mass = 0.0;
  double moment = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double h = x[i] - x[i - 1];
    mass += 0.5 * h * (y[i] + y[i - 1]);
    moment += 0.5 * h * (x[i] * y[i] + x[i - 1] * y[i - 1]);
  }
  if (!(mass > 0)) throw Error(ErrorCode::NonPositiveMass, "integrated spectrum is not positive");
  return moment / mass;
}

double integrate_window(const SpectrumCurve& curve, double lo, double hi) {
  const auto& x = curve.omega;
  const auto& y = curve.intensity;
  if (x.size() < 2 || !(hi > lo)) return 0.0;
  lo = std::max(lo, x.front());
  hi = std::min(hi, x.back());
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double a = std::max(lo, x[i - 1]);
    const double b = std::min(hi, x[i]);
    if (!(b > a)) continue;
    const double h = x[i] - x[i - 1];
    const double slope = (y[i] - y[i - 1]) / h;
    const double ya = y[i - 1] + slope * (a - x[i - 1]);
    const double yb = y[i - 1] + slope * (b - x[i - 1]);
    sum += 0.5 * (b - a) * (ya + yb);
  }
  return sum;
}

double TripletWeights::sideband_fraction() const {
  const double total = lower + central + upper;
  if (!(total > 0)) throw Error(ErrorCode::NonPositiveMass, "triplet windows hold no weight");
  return (lower + upper) / total;
}

TripletWeights triplet_weights(const SpectrumCurve& curve, double center, double separation,
                               double half_width) {
  TripletWeights w;
  w.lower = integrate_window(curve, center - separation - half_width, center - separation + half_width);
  w.central = integrate_window(curve, center - half_width, center + half_width);
  w.upper = integrate_window(curve, center + separation - half_width, center + separation + half_width);
  return w;
}

double triplet_contrast(const PeakReport& report) {
  if (report.peaks.size() != 3 || !report.central_index) return 0.0;
  double smallest = std::numeric_limits<double>::infinity();
  for (const Peak& p : report.peaks) smallest = std::min(smallest, p.prominence);
  const double central = report.peaks[*report.central_index].height;
  return central > 0 ? smallest / central : 0.0;
}

PeakReport analyze(const SpectrumCurve& curve, const AnalysisOptions& options) {
  PeakReport report;
  if (options.peaks && curve.size() >= 3) {
    const double top = *std::max_element(curve.intensity.begin(), curve.intensity.end());
    report = find_peaks(curve, options.min_prominence_fraction * top);
  }
  if (options.symmetry && !curve.omega.empty() && grid_is_symmetric(curve.omega)) {
    report.symmetry_residual = symmetry_residual(curve);
  }
  if (options.center_of_gravity && curve.size() >= 2) {
    report.center_of_gravity = center_of_gravity(curve);
  }
  if (options.weight_separation && options.weight_half_width) {
    report.sideband_weight_fraction =
        triplet_weights(curve, 0.0, *options.weight_separation, *options.weight_half_width)
            .sideband_fraction();
  }
  return report;
}

}  // namespace mollow
