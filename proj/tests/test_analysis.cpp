#include <doctest.h>

#include <cmath>

#include "mollow/analysis.hpp"
#include "mollow/core_spectrum.hpp"
#include "mollow/error.hpp"

using namespace mollow;

namespace {

SpectrumCurve from_function(double lo, double hi, std::size_t n, double (*f)(double)) {
  SpectrumCurve c;
  c.omega = linear_grid(lo, hi, n);
  for (const double w : c.omega) c.intensity.push_back(f(w));
  return c;
}

double lorentz(double w, double center, double width) { return width * width / ((w - center) * (w - center) + width * width); }

double triplet(double w) { return lorentz(w, 0.0, 0.5) + 0.4 * lorentz(w, -3.0, 0.7) + 0.4 * lorentz(w, 3.0, 0.7); }
double lopsided(double w) { return lorentz(w, 0.0, 0.5) + 0.2 * lorentz(w, -3.0, 0.7) + 0.5 * lorentz(w, 3.0, 0.7); }
double doublet(double w) { return lorentz(w, -2.0, 0.5) + lorentz(w, 2.0, 0.5); }
double single(double w) { return lorentz(w, 0.0, 1.0); }

}  // namespace

TEST_CASE("finds the three peaks of a symmetric triplet") {
  const SpectrumCurve c = from_function(-10.0, 10.0, 2001, triplet);
  const PeakReport r = analyze(c);
  REQUIRE(r.peaks.size() == 3);
  REQUIRE(r.central_index.has_value());
  CHECK(*r.central_index == 1);
  CHECK(r.peaks[1].omega == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sideband_separation(r) == doctest::Approx(3.0).epsilon(0.01));
  REQUIRE(r.symmetry_residual.has_value());
  CHECK(*r.symmetry_residual < 1e-14);
  CHECK(std::abs(*r.center_of_gravity) < 1e-12);
  CHECK(triplet_contrast(r) > 0.0);
}

TEST_CASE("two peaks are not a triplet") {
  const SpectrumCurve c = from_function(-6.0, 6.0, 601, doublet);
  const PeakReport r = find_peaks(c, default_min_prominence(c));
  CHECK(r.peaks.size() == 2);
  CHECK(!r.sideband_separation.has_value());
  try {
    sideband_separation(r);
    FAIL("expected NotATriplet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotATriplet);
  }
  CHECK(triplet_contrast(r) == 0.0);
}

TEST_CASE("a single Lorentzian has one peak and no sidebands") {
  const PeakReport r = analyze(from_function(-5.0, 5.0, 501, single));
  CHECK(r.peaks.size() == 1);
  CHECK(!r.sideband_separation);
}

TEST_CASE("flat tops count once at the leftmost sample") {
  SpectrumCurve c;
  c.omega = {0, 1, 2, 3, 4, 5, 6};
  c.intensity = {0, 1, 3, 3, 3, 1, 0};
  const PeakReport r = find_peaks(c, 0.0);
  REQUIRE(r.peaks.size() == 1);
  CHECK(r.peaks[0].index == 2);
}

TEST_CASE("prominence filters ripples") {
  SpectrumCurve c;
  c.omega = {0, 1, 2, 3, 4, 5, 6};
  c.intensity = {0, 10, 9, 9.05, 9, 5, 0};
  CHECK(find_peaks(c, 0.0).peaks.size() == 2);
  CHECK(find_peaks(c, 0.1).peaks.size() == 1);
}

TEST_CASE("short curves and asymmetric grids are rejected") {
  SpectrumCurve tiny;
  tiny.omega = {0.0, 1.0};
  tiny.intensity = {1.0, 2.0};
  try {
    find_peaks(tiny, 0.0);
    FAIL("expected CurveTooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CurveTooShort);
  }
  const SpectrumCurve shifted = from_function(-4.0, 6.0, 101, single);
  try {
    symmetry_residual(shifted);
    FAIL("expected AsymmetricGrid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AsymmetricGrid);
  }
  CHECK(!analyze(shifted).symmetry_residual.has_value());
}

TEST_CASE("center of gravity needs positive mass") {
  SpectrumCurve zero;
  zero.omega = {-1.0, 0.0, 1.0};
  zero.intensity = {0.0, 0.0, 0.0};
  try {
    center_of_gravity(zero);
    FAIL("expected NonPositiveMass");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveMass);
  }
}

TEST_CASE("window integration is exact for piecewise-linear data") {
  SpectrumCurve c;
  c.omega = {0.0, 1.0, 2.0};
  c.intensity = {0.0, 2.0, 0.0};
  CHECK(integrate_window(c, 0.0, 2.0) == doctest::Approx(2.0));
  CHECK(integrate_window(c, 0.5, 1.5) == doctest::Approx(1.5));
  CHECK(integrate_window(c, -5.0, 0.5) == doctest::Approx(0.25));
  CHECK(integrate_window(c, 3.0, 4.0) == 0.0);
}

TEST_CASE("sideband weight fraction reflects the windows") {
  const SpectrumCurve c = from_function(-10.0, 10.0, 2001, triplet);
  const TripletWeights w = triplet_weights(c, 0.0, 3.0, 1.0);
  CHECK(w.lower == doctest::Approx(w.upper).epsilon(1e-12));
  CHECK(w.sideband_fraction() > 0.0);
  CHECK(w.sideband_fraction() < 1.0);
  AnalysisOptions opts;
  opts.weight_separation = 3.0;
  opts.weight_half_width = 1.0;
  CHECK(*analyze(c, opts).sideband_weight_fraction == doctest::Approx(w.sideband_fraction()));
}

TEST_CASE("lopsided triplet keeps its ordering and has nonzero first moment") {
  const PeakReport r = analyze(from_function(-10.0, 10.0, 2001, lopsided));
  REQUIRE(r.peaks.size() == 3);
  CHECK(r.peaks[0].height < r.peaks[2].height);
  CHECK(*r.center_of_gravity > 0.0);
  CHECK(*r.symmetry_residual > 0.1);
}

TEST_CASE("a real Mollow spectrum reports the generalized Rabi splitting") {
  PhysicalParams p;
  p.rabi_frequency = 20.0;
  p.gamma = 1.0;
  const SpectrumCurve c = spectrum_curve_fixed_v(p, RtsParams{}, linear_grid(-40.0, 40.0, 4001));
  const PeakReport r = analyze(c);
  REQUIRE(r.sideband_separation.has_value());
  CHECK(*r.sideband_separation == doctest::Approx(20.0).epsilon(0.01));
}
