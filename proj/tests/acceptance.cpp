// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mollow/analysis.hpp"
#include "mollow/core_spectrum.hpp"
#include "mollow/curve_io.hpp"
#include "mollow/error.hpp"
#include "mollow/oracle.hpp"
#include "mollow/presets.hpp"
#include "mollow/runner.hpp"
#include "mollow/velocity_average.hpp"
#include "support/reference.hpp"

using namespace mollow;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double time_limit;
  std::function<void(Outcome&)> body;
};

PhysicalParams resonant(double rabi) {
  PhysicalParams p;
  p.rabi_frequency = rabi;
  p.gamma = 1.0;
  return p;
}

double max_of(const std::vector<double>& xs) { return *std::max_element(xs.begin(), xs.end()); }

const Scenario& scenario_named(const RunConfig& config, const std::string& name) {
  for (const Scenario& s : config.scenarios) {
    if (s.name == name) return s;
  }
  throw Error(ErrorCode::ValidationError, "no scenario " + name);
}

struct Analyzed {
  SpectrumCurve curve;
  PeakReport report;
};

Analyzed analyzed(const Scenario& s) {
  Analyzed a{compute_curve(s), {}};
  a.report = analyze(a.curve, analysis_options(s));
  return a;
}

void mollow_reduction(Outcome& out) {
  const PhysicalParams p = resonant(10.0);
  const SpectrumCurve c = spectrum_curve_fixed_v(p, RtsParams{}, linear_grid(-20.0, 20.0, 2001));
  double worst = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double want = reference::mollow_resonant(10.0, 1.0, c.omega[i]);
    worst = std::max(worst, std::abs(c.intensity[i] - want) / want);
  }
  out.detail << "max relative error " << worst << " (tol 1e-9)";
  out.require(worst < 1e-9, "pointwise agreement");
}

void three_to_one(Outcome& out) {
  std::vector<double> deviation;
  for (const double rabi : {10.0, 20.0, 50.0}) {
    const PhysicalParams p = resonant(rabi);
    const double ratio = spectrum_at(p, RtsParams{}, 0.0) / spectrum_at(p, RtsParams{}, rabi);
    deviation.push_back(std::abs(ratio - 3.0) / 3.0);
    out.detail << "W=" << rabi << ": " << ratio << "  ";
  }
  out.require(deviation[2] < 0.05, "within 5% at W = 50");
  out.require(deviation[0] > deviation[1] && deviation[1] > deviation[2], "monotone approach");
}

void fig1a(Outcome& out) {
  const RunConfig config = preset("fig1a");
  for (const Scenario& s : config.scenarios) {
    const Analyzed a = analyzed(s);
    const PeakReport& r = a.report;
    const double step = a.curve.omega[1] - a.curve.omega[0];
    const double w0 = s.params.rabi_frequency;
    const std::string at = " at W=" + format_double(w0);
    out.detail << "\n      W=" << w0 << ": peaks=" << r.peaks.size();
    out.require(r.peaks.size() == 3, "three peaks" + at);
    const double sym = r.symmetry_residual.value_or(1.0);
    out.detail << " symmetry=" << sym;
    out.require(sym < 1e-8, "symmetry" + at);
    if (r.peaks.size() != 3 || !r.central_index) continue;
    const double central = r.peaks[*r.central_index].height;
    const double side = std::max(r.peaks.front().height, r.peaks.back().height);
    const double separation = *r.sideband_separation;
    out.detail << " separation=" << separation << " (W=" << w0 << ", step " << step << ")"
               << " side/central=" << side / central;
    out.require(central > side, "central peak highest" + at);
    out.require(std::abs(separation - w0) <= step * (1 + 1e-9), "separation within one step" + at);
    out.require(side / central < 1.0 / 3.0, "side/central < 1/3" + at);
  }
}

void fig1b_asymmetry(Outcome& out) {
  const RunConfig config = preset("fig1b");
  const Analyzed minus = analyzed(scenario_named(config, "fig1b_dm1"));
  const Analyzed plus = analyzed(scenario_named(config, "fig1b_dp1"));
  for (const auto* a : {&minus, &plus}) out.require(a->report.peaks.size() >= 2, "two resolved sidebands");
  if (!out.pass) return;
  const auto& pm = minus.report.peaks;
  const auto& pp = plus.report.peaks;
  out.detail << "D=-1: left " << pm.front().height << " right " << pm.back().height << "; D=+1: left "
             << pp.front().height << " right " << pp.back().height;
  out.require(pm.front().height > pm.back().height, "left > right at D = -1");
  out.require(pp.back().height > pp.front().height, "right > left at D = +1");

  const std::size_t n = minus.curve.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(plus.curve.intensity[i] - minus.curve.intensity[n - 1 - i]));
  }
  worst /= max_of(minus.curve.intensity);
  out.detail << "; mirror residual " << worst;
  out.require(worst < 1e-8, "mirror invariant");
}

void fig2_degradation(Outcome& out) {
  const RunConfig weak = preset("fig1b");
  const RunConfig strong = preset("fig2a");
  const RunConfig broad = preset("fig2b");
  bool lost = false;
  bool broadening_lowers = false;
  for (std::size_t i = 0; i < weak.scenarios.size(); ++i) {
    const Analyzed w = analyzed(weak.scenarios[i]);
    const Analyzed s = analyzed(strong.scenarios[i]);
    const Analyzed b = analyzed(broad.scenarios[i]);
    const double cw = triplet_contrast(w.report);
    const double cs = triplet_contrast(s.report);
    const double cb = triplet_contrast(b.report);
    out.detail << "\n      D=" << weak.scenarios[i].params.detuning << ": contrast k=0.01 " << cw << ", k=0.2 " << cs
               << ", k=0.2 gamma=0.4 " << cb << "; peaks " << w.report.peaks.size() << "/" << s.report.peaks.size()
               << "/" << b.report.peaks.size();
    out.require(cs < cw, "k = 0.2 contrast below k = 0.01");
    out.require(cb <= cs, "gamma = 0.4 contrast not above gamma = 0.2");
    if (cb < cs) broadening_lowers = true;
    if (s.report.peaks.size() != 3 || b.report.peaks.size() != 3) lost = true;
  }
  out.require(broadening_lowers, "gamma = 0.4 strictly lowers contrast somewhere");
  out.require(lost, "triplet lost for some detuning");
}

void center_of_gravity_shift(Outcome& out) {
  const Analyzed weak = analyzed(scenario_named(preset("fig1b"), "fig1b_d0"));
  const Analyzed strong = analyzed(scenario_named(preset("fig2a"), "fig2a_d0"));
  const double fw = *weak.report.sideband_weight_fraction;
  const double fs = *strong.report.sideband_weight_fraction;
  out.detail << "sideband weight fraction k=0.01 " << fw << ", k=0.2 " << fs << "; first moments "
             << *weak.report.center_of_gravity << ", " << *strong.report.center_of_gravity;
  out.require(fs > fw, "fraction increases with k");
}

void maxwell_boltzmann(Outcome& out) {
  for (const double c : {1.6e-4, 1e-2, 1.0}) {
    const double mass = density_mass(c, QuadratureSpec{});
    out.detail << "c=" << c << ": 1-" << 1.0 - mass << "  ";
    out.require(std::abs(mass - 1.0) <= 1e-10, "normalization at c=" + format_double(c));
  }
}

void oracle_equivalence(Outcome& out) {
  struct Case {
    const char* label;
    double k;
    double detuning;
  };
  const Case cases[] = {{"D=0 a=0.05", 0.05, 0.0}, {"D=1 a=0.05", 0.05, 1.0}, {"D=0 a=0.5", 0.5, 0.0}};
  const std::vector<double> grid = linear_grid(-10.0, 10.0, 401);
  const double step = grid[1] - grid[0];
  for (const Case& c : cases) {
    PhysicalParams p = resonant(4.0);
    p.detuning = c.detuning;
    p.wave_number = c.k;
    p.collision_density = 0.9;
    const RtsParams rts = RtsParams::from_thermal_speed(p, 1.0);
    const SpectrumCurve exact = spectrum_curve_fixed_v(p, rts, grid);
    const SpectrumCurve mc = oracle_spectrum(p, rts, grid, 20000, 2024);
    std::size_t compared = 0;
    std::size_t agree = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (std::abs(grid[i]) < step) continue;
      ++compared;
      if (std::abs(mc.intensity[i] - exact.intensity[i]) <= 3.0 * mc.provenance.oracle->std_error[i]) ++agree;
    }
    const double fraction = static_cast<double>(agree) / static_cast<double>(compared);
    out.detail << c.label << " (rate " << rts.switch_rate << "): " << 100.0 * fraction << "%  ";
    out.require(fraction >= 0.95, std::string("95% agreement for ") + c.label);
  }
}

void determinism(Outcome& out) {
  RunConfig config = preset("fig1b");
  config.scenarios.resize(1);
  Scenario mc = config.scenarios[0];
  mc.name = "kernel_mc";
  mc.mode = AveragingMode::Oracle;
  mc.speed = 1.0;
  mc.params.wave_number = 2.0;
  mc.grid = {-4.0, 4.0, 161};
  mc.oracle.n_traj = 500;
  mc.oracle.seed = 99;
  config.scenarios.push_back(mc);
  mc.name = "emission_mc";
  mc.oracle.kind = CorrelationKind::Emission;
  mc.oracle.n_traj = 100;
  mc.oracle.tau_points = 1001;
  config.scenarios.push_back(mc);

  const auto base = std::filesystem::temp_directory_path() / "mollow_acceptance_determinism";
  std::filesystem::remove_all(base);
  std::vector<std::string> first;
  for (const unsigned threads : {1u, 1u, 4u}) {
    RunOptions opts;
    opts.threads = threads;
    opts.output_directory = base / std::to_string(first.size());
    const RunReport report = run(config, opts);
    out.require(report.success(), "run succeeded");
    std::string joined;
    for (const Scenario& s : config.scenarios) joined += read_text_file(*opts.output_directory / (s.name + ".csv"));
    first.push_back(joined);
  }
  out.detail << first[0].size() << " CSV bytes per run, 3 runs";
  out.require(first[0] == first[1], "repeat run identical");
  out.require(first[0] == first[2], "multi-threaded run identical");
  std::filesystem::remove_all(base);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Mollow reduction", 1.0, mollow_reduction},
      {2, "3:1 ratio limit", 1.0, three_to_one},
      {3, "gamma-unit triplet structure", 30.0, fig1a},
      {4, "detuning asymmetry signs and mirror", 60.0, fig1b_asymmetry},
      {5, "triplet degradation", 60.0, fig2_degradation},
      {6, "sideband weight shift", 60.0, center_of_gravity_shift},
      {7, "Maxwell-Boltzmann normalization", 1.0, maxwell_boltzmann},
      {8, "Monte Carlo oracle equivalence", 600.0, oracle_equivalence},
      {9, "byte-identical reruns", 120.0, determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome out;
    out.detail.precision(6);
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(seconds < c.time_limit, "runtime limit");
    if (!out.pass) ++failures;
    std::printf("%s criterion %d (%s): %s  [%.2f s, limit %.0f s]\n", out.pass ? "PASS" : "FAIL", c.id, c.title,
                out.detail.str().c_str(), seconds, c.time_limit);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
