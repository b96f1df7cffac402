#include "mollow/runner.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "mollow/curve_io.hpp"
#include "mollow/error.hpp"
#include "mollow/oracle.hpp"
#include "mollow/parallel.hpp"
#include "mollow/velocity_average.hpp"
#include "mollow/core_spectrum.hpp"

namespace mollow {

using nlohmann::json;

bool RunReport::success() const {
  return std::none_of(scenarios.begin(), scenarios.end(),
                      [](const ScenarioResult& r) { return r.status != ScenarioStatus::Ok; });
}

int exit_code(const RunReport& report) { return report.success() ? 0 : 1; }

AnalysisOptions analysis_options(const Scenario& scenario) {
  AnalysisOptions options;
  options.peaks = scenario.analysis.peaks;
  options.symmetry = scenario.analysis.symmetry;
  options.center_of_gravity = scenario.analysis.center_of_gravity;
  options.min_prominence_fraction = scenario.analysis.min_prominence_fraction;
  if (scenario.analysis.sideband_weights) {
    const PhysicalParams& p = scenario.params;
    const double separation = std::hypot(p.rabi_frequency, p.detuning);
    options.weight_separation = separation;
    options.weight_half_width = std::max(p.gamma, 0.2 * separation);
  }
  return options;
}

SpectrumCurve compute_curve(const Scenario& scenario, unsigned threads) {
  const std::vector<double> grid = scenario.grid.points();
  switch (scenario.mode) {
    case AveragingMode::FixedSpeed:
      return spectrum_curve_fixed_v(scenario.params,
                                    RtsParams::from_thermal_speed(scenario.params, scenario.speed), grid);
    case AveragingMode::Thermal:
      return averaged_spectrum_curve(scenario.params, grid, scenario.quadrature);
    case AveragingMode::Oracle: {
      OracleOptions options;
      options.kind = scenario.oracle.kind;
      options.tau_max = scenario.oracle.tau_max;
      options.burn_in = scenario.oracle.burn_in;
      options.tau_points = scenario.oracle.tau_points;
      options.threads = threads;
      return oracle_spectrum(scenario.params, RtsParams::from_thermal_speed(scenario.params, scenario.speed),
                             grid, scenario.oracle.n_traj, scenario.oracle.seed, options);
    }
  }
  throw Error(ErrorCode::ValidationError, "unknown averaging mode");
}

namespace {

std::string file_extension(CurveFormat format) { return format == CurveFormat::Csv ? ".csv" : ".json"; }

ScenarioResult run_scenario(const Scenario& scenario, const std::vector<CurveFormat>& formats,
                            const std::filesystem::path& out_dir, bool gnuplot,
                            const RunOptions& options) {
  ScenarioResult result;
  result.name = scenario.name;
  try {
    SpectrumCurve curve = compute_curve(scenario, options.threads);
    PeakReport report = analyze(curve, analysis_options(scenario));
    if (scenario.analysis.peaks) result.triplet_contrast = triplet_contrast(report);
    if (options.write_files) {
      for (const CurveFormat format : formats) {
        const std::filesystem::path path = out_dir / (scenario.name + file_extension(format));
        const std::string bytes = emit_curve(curve, path, format);
        result.files.push_back({path.string(), std::string(to_string(format)), sha256_hex(bytes)});
      }
      if (gnuplot) {
        const std::filesystem::path path = out_dir / (scenario.name + ".gp");
        const std::string bytes = gnuplot_script(curve, scenario.name + ".csv", scenario.name);
        write_text_file(path, bytes);
        result.files.push_back({path.string(), "gnuplot", sha256_hex(bytes)});
      }
    }
    result.curve = std::move(curve);
    result.report = std::move(report);
    result.status = ScenarioStatus::Ok;
  } catch (const Error& e) {
    result.status = ScenarioStatus::Error;
    result.error_code = std::string(to_string(e.code()));
    result.error_message = e.message();
  }
  return result;
}

json optional_json(const std::optional<double>& value) { return value ? json(*value) : json(nullptr); }

}  // namespace

RunReport run(const RunConfig& input, const RunOptions& options) {
  RunConfig config = input;
  if (options.output_directory) config.output_directory = options.output_directory->string();
  if (options.format) config.formats = {*options.format};
  if (options.seed) {
    for (Scenario& s : config.scenarios) s.oracle.seed = *options.seed;
  }
  config.validate();

  RunReport report;
  report.config_sha256 = sha256_hex(emit_config(config));
  if (options.input_bytes) report.input_sha256 = sha256_hex(*options.input_bytes);

  const std::filesystem::path out_dir = config.output_directory;
  bool stop = false;
  for (const Scenario& scenario : config.scenarios) {
    if (stop) {
      ScenarioResult skipped;
      skipped.name = scenario.name;
      report.scenarios.push_back(std::move(skipped));
      continue;
    }
    report.scenarios.push_back(run_scenario(scenario, config.formats, out_dir, config.gnuplot, options));
    stop = options.fail_fast && report.scenarios.back().status == ScenarioStatus::Error;
  }

  if (options.write_files) write_text_file(out_dir / "report.json", report_to_json(report));
  return report;
}

std::string report_to_json(const RunReport& report) {
  json scenarios = json::array();
  for (const ScenarioResult& r : report.scenarios) {
    json entry;
    entry["name"] = r.name;
    entry["status"] = r.status == ScenarioStatus::Ok      ? "ok"
                      : r.status == ScenarioStatus::Error ? "error"
                                                          : "skipped";
    if (r.status == ScenarioStatus::Error) {
      entry["error"] = {{"code", r.error_code}, {"message", r.error_message}};
    }
    json files = json::array();
    for (const OutputFile& f : r.files) files.push_back({{"path", f.path}, {"format", f.format}, {"sha256", f.sha256}});
    entry["files"] = std::move(files);
    if (r.curve) {
      const CurveProvenance& prov = r.curve->provenance;
      entry["mode"] = std::string(to_string(prov.mode));
      entry["points"] = r.curve->size();
      entry["quadrature_error"] = optional_json(prov.quadrature_error);
      if (prov.oracle) {
        entry["oracle"] = {{"n_trajectories", prov.oracle->n_trajectories},
                           {"seed", prov.oracle->seed},
                           {"kind", prov.oracle->kind}};
      }
    }
    if (r.report) {
      const PeakReport& pr = *r.report;
      json peaks = json::array();
      for (const Peak& p : pr.peaks) {
        peaks.push_back({{"omega", p.omega}, {"height", p.height}, {"prominence", p.prominence}});
      }
      json analysis;
      analysis["peak_count"] = pr.peaks.size();
      analysis["peaks"] = std::move(peaks);
      analysis["central_index"] = pr.central_index ? json(*pr.central_index) : json(nullptr);
      analysis["sideband_separation"] = optional_json(pr.sideband_separation);
      analysis["symmetry_residual"] = optional_json(pr.symmetry_residual);
      analysis["center_of_gravity"] = optional_json(pr.center_of_gravity);
      analysis["sideband_weight_fraction"] = optional_json(pr.sideband_weight_fraction);
      analysis["triplet_contrast"] = optional_json(r.triplet_contrast);
      entry["analysis"] = std::move(analysis);
    }
    scenarios.push_back(std::move(entry));
  }
  json j;
  j["config_sha256"] = report.config_sha256;
  if (report.input_sha256) j["input_sha256"] = *report.input_sha256;
  j["success"] = report.success();
  j["scenarios"] = std::move(scenarios);
  return j.dump(2) + "\n";
}

}  // namespace mollow
