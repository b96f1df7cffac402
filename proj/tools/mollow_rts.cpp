#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

#include "mollow/core_spectrum.hpp"
#include "mollow/curve_io.hpp"
#include "mollow/error.hpp"
#include "mollow/oracle.hpp"
#include "mollow/presets.hpp"
#include "mollow/runner.hpp"

namespace {

constexpr int kExitScenario = 1;
constexpr int kExitConfig = 2;

struct Common {
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  bool fail_fast = false;
};

struct ScenarioFlags {
  std::string name = "spectrum";
  std::string mode = "thermal";
  std::string units = "gamma";
  mollow::Scenario scenario;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Output directory");
  cmd->add_option("--format", c.format, "Curve format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", c.seed, "Monte Carlo seed");
  cmd->add_option("--threads", c.threads, "Worker threads (MOLLOW_RTS_THREADS overrides)");
  cmd->add_flag("--fail-fast", c.fail_fast, "Stop at the first failing scenario");
}

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& f, bool with_mode) {
  mollow::PhysicalParams& p = f.scenario.params;
  cmd->add_option("--name", f.name, "Scenario name (file stem)");
  cmd->add_option("--rabi", p.rabi_frequency, "Rabi frequency")->capture_default_str();
  cmd->add_option("--detuning", p.detuning, "Detuning")->capture_default_str();
  cmd->add_option("--gamma", p.gamma, "Half the Einstein A coefficient")->capture_default_str();
  cmd->add_option("--k", p.wave_number, "Wave number in 1/r0")->capture_default_str();
  cmd->add_option("--b", p.collision_density, "Collision density n_p r0^2")->capture_default_str();
  cmd->add_option("--c", p.thermal_c, "m/(k_B T) in 1/v0^2")->capture_default_str();
  cmd->add_option("--units", f.units, "Unit scale label")->check(CLI::IsMember({"gamma", "rabi"}));
  cmd->add_option("--omega-min", f.scenario.grid.min)->capture_default_str();
  cmd->add_option("--omega-max", f.scenario.grid.max)->capture_default_str();
  cmd->add_option("--count", f.scenario.grid.count, "Grid points")->capture_default_str();
  cmd->add_option("--speed", f.scenario.speed, "Molecular speed in units of v0");
  if (with_mode) {
    cmd->add_option("--mode", f.mode, "Averaging mode")->check(CLI::IsMember({"fixed_v", "thermal"}));
    cmd->add_option("--nodes", f.scenario.quadrature.node_count, "Quadrature nodes")->capture_default_str();
  }
}

mollow::Scenario build_scenario(ScenarioFlags& f) {
  mollow::Scenario s = f.scenario;
  s.name = f.name;
  s.params.unit_scale = mollow::unit_scale_from_string(f.units);
  s.mode = f.mode == "fixed_v" ? mollow::AveragingMode::FixedSpeed : mollow::AveragingMode::Thermal;
  return s;
}

mollow::RunOptions run_options(const Common& c) {
  mollow::RunOptions options;
  options.fail_fast = c.fail_fast;
  options.threads = c.threads;
  if (!c.out.empty()) options.output_directory = c.out;
  if (!c.format.empty()) options.format = mollow::curve_format_from_string(c.format);
  options.seed = c.seed;
  return options;
}

void print_summary(const mollow::RunReport& report) {
  for (const mollow::ScenarioResult& r : report.scenarios) {
    if (r.status == mollow::ScenarioStatus::Ok) {
      std::printf("%-24s ok     peaks=%zu", r.name.c_str(), r.report ? r.report->peaks.size() : 0);
      if (r.report && r.report->sideband_separation) std::printf(" separation=%.6g", *r.report->sideband_separation);
      if (r.triplet_contrast) std::printf(" contrast=%.4g", *r.triplet_contrast);
      std::printf("\n");
    } else if (r.status == mollow::ScenarioStatus::Error) {
      std::printf("%-24s error  %s: %s\n", r.name.c_str(), r.error_code.c_str(), r.error_message.c_str());
    } else {
      std::printf("%-24s skipped\n", r.name.c_str());
    }
  }
}

int run_config(mollow::RunConfig config, const Common& c, std::optional<std::string> input_bytes) {
  mollow::RunOptions options = run_options(c);
  options.input_bytes = std::move(input_bytes);
  mollow::RunReport report;
  try {
    report = mollow::run(config, options);
  } catch (const mollow::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == mollow::ErrorCode::ValidationError || e.code() == mollow::ErrorCode::ParseError
               ? kExitConfig
               : kExitScenario;
  }
  print_summary(report);
  return mollow::exit_code(report);
}

// Analytic fixed-speed curve against the Monte Carlo estimate; agreement is
// counted within three combined error bands away from omega = 0.
int run_oracle(ScenarioFlags& f, const Common& c, std::uint64_t n_traj, const std::string& kind) {
  mollow::Scenario s = build_scenario(f);
  s.mode = mollow::AveragingMode::Oracle;
  s.oracle.n_traj = n_traj;
  s.oracle.kind = mollow::correlation_kind_from_string(kind);
  if (c.seed) s.oracle.seed = *c.seed;

  mollow::Scenario analytic = s;
  analytic.name = s.name + "_analytic";
  analytic.mode = mollow::AveragingMode::FixedSpeed;

  mollow::RunConfig config;
  config.scenarios = {analytic, s};
  if (!c.out.empty()) config.output_directory = c.out;
  mollow::RunOptions options = run_options(c);
  const mollow::RunReport report = mollow::run(config, options);
  print_summary(report);
  if (!report.success()) return kExitScenario;

  const mollow::SpectrumCurve& exact = *report.scenarios[0].curve;
  const mollow::SpectrumCurve& mc = *report.scenarios[1].curve;
  const double step = exact.omega[1] - exact.omega[0];
  std::size_t compared = 0;
  std::size_t agreeing = 0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    if (std::abs(exact.omega[i]) < step) continue;
    ++compared;
    if (std::abs(exact.intensity[i] - mc.intensity[i]) <= 3.0 * mc.provenance.oracle->std_error[i]) ++agreeing;
  }
  const double fraction = compared ? static_cast<double>(agreeing) / compared : 0.0;
  std::printf("agreement within 3 sigma: %zu/%zu (%.2f%%)\n", agreeing, compared, 100.0 * fraction);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonance fluorescence spectra of two-level atoms under telegraph collisional noise"};
  app.require_subcommand(1);

  Common common;

  ScenarioFlags spectrum_flags;
  CLI::App* spectrum = app.add_subcommand("spectrum", "Compute one spectrum from flags");
  add_scenario_flags(spectrum, spectrum_flags, true);
  add_common(spectrum, common);

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "Run every scenario in a config file");
  run->add_option("--config", config_path, "YAML run config")->required();
  add_common(run, common);

  ScenarioFlags oracle_flags;
  oracle_flags.name = "oracle";
  oracle_flags.scenario.speed = 1.0;
  std::uint64_t n_traj = 2000;
  std::string kind = "dipole_kernel";
  CLI::App* oracle = app.add_subcommand("oracle", "Compare the closed form with Monte Carlo at one speed");
  add_scenario_flags(oracle, oracle_flags, false);
  oracle->add_option("--n-traj", n_traj, "Trajectories")->capture_default_str();
  oracle->add_option("--kind", kind, "Correlation kind")->check(CLI::IsMember({"dipole_kernel", "emission"}));
  add_common(oracle, common);

  CLI::App* presets = app.add_subcommand("presets", "List or emit the shipped figure configs");
  presets->require_subcommand(1);
  presets->add_subcommand("list", "List preset names");
  std::string preset_name;
  std::string preset_out;
  CLI::App* emit = presets->add_subcommand("emit", "Print a preset config");
  emit->add_option("name", preset_name, "Preset name")->required();
  emit->add_option("--out", preset_out, "Write to this file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectrum->parsed()) {
      mollow::RunConfig config;
      config.scenarios = {build_scenario(spectrum_flags)};
      return run_config(config, common, std::nullopt);
    }
    if (run->parsed()) {
      std::string bytes;
      mollow::RunConfig config;
      try {
        bytes = mollow::read_text_file(config_path);
        config = mollow::parse_config(bytes);
      } catch (const mollow::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
      }
      return run_config(config, common, bytes);
    }
    if (oracle->parsed()) return run_oracle(oracle_flags, common, n_traj, kind);
    if (presets->got_subcommand("list")) {
      for (const std::string& name : mollow::preset_names()) std::printf("%s\n", name.c_str());
      return 0;
    }
    if (emit->parsed()) {
      const std::string yaml = mollow::emit_config(mollow::preset(preset_name));
      if (preset_out.empty()) {
        std::fwrite(yaml.data(), 1, yaml.size(), stdout);
      } else {
        mollow::write_text_file(preset_out, yaml);
      }
      return 0;
    }
  } catch (const mollow::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == mollow::ErrorCode::ValidationError || e.code() == mollow::ErrorCode::ParseError
               ? kExitConfig
               : kExitScenario;
  }
  return 0;
}
