#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "mollow/config.hpp"
#include "mollow/core_spectrum.hpp"
#include "mollow/curve_io.hpp"
#include "mollow/error.hpp"
#include "mollow/presets.hpp"
#include "mollow/runner.hpp"

using namespace mollow;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mollow_cli_io_" + name);
  fs::remove_all(dir);
  return dir;
}

ErrorCode code_of(const std::string& yaml) {
  try {
    parse_config(yaml);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::IoError;
}

std::string message_of(const std::string& yaml) {
  try {
    parse_config(yaml);
  } catch (const Error& e) {
    return e.message();
  }
  return "";
}

SpectrumCurve small_curve() {
  PhysicalParams p;
  p.rabi_frequency = 2.0;
  p.detuning = 0.1;
  return spectrum_curve_fixed_v(p, RtsParams{0.3, 0.7, 1.0}, linear_grid(-3.0, 3.0, 7));
}

}  // namespace

TEST_CASE("doubles print with 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK(format_double(2.0 / 3.0) == "0.66666666666666663");
  for (const double x : {0.1, 1.0 / 3.0, -7.25e-12, 123456.789}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("CSV layout is header plus LF rows") {
  const SpectrumCurve c = small_curve();
  const std::string csv = curve_to_csv(c);
  CHECK(csv.rfind("omega,intensity\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.find(" \n") == std::string::npos);
  CHECK(csv.back() == '\n');
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);
  const SpectrumCurve back = curve_from_csv(csv);
  CHECK(back.omega == c.omega);
  CHECK(back.intensity == c.intensity);
}

TEST_CASE("JSON round-trips samples and provenance") {
  SpectrumCurve c = small_curve();
  QuadratureSpec q;
  q.node_count = 48;
  c.provenance.quadrature = q;
  c.provenance.quadrature_error = 3.5e-11;
  c.provenance.oracle = OracleProvenance{100, 9, 30.0, "emission", std::vector<double>(7, 0.01)};
  CHECK(curve_from_json(curve_to_json(c)) == c);
  CHECK_THROWS_AS(curve_from_json("{\"omega\": [1]}"), Error);
}

TEST_CASE("SHA-256 of known inputs") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("defaults fill missing keys") {
  const RunConfig c = parse_config("scenarios:\n  - name: a\n");
  REQUIRE(c.scenarios.size() == 1);
  CHECK(c.scenarios[0].params == PhysicalParams{});
  CHECK(c.scenarios[0].mode == AveragingMode::Thermal);
  CHECK(c.formats == std::vector<CurveFormat>{CurveFormat::Csv});
  CHECK(parse_config("").scenarios.empty());
}

TEST_CASE("config errors name the key") {
  CHECK(code_of("scenarios: [") == ErrorCode::ParseError);
  CHECK(message_of("a: [1,\n  b: }").find("line") != std::string::npos);

  CHECK(code_of("scenarios:\n  - name: a\n    params: {rabi_frequncy: 2}\n") == ErrorCode::ValidationError);
  CHECK(message_of("scenarios:\n  - name: a\n    params: {rabi_frequncy: 2}\n").find("scenarios[0].params.rabi_frequncy") !=
        std::string::npos);
  CHECK(message_of("scenarios:\n  - name: a\n    params: {gamma: -1}\n").find("scenarios[0].params.gamma") !=
        std::string::npos);
  CHECK(message_of("scenarios:\n  - name: a\n    params: {gamma: fast}\n").find("scenarios[0].params.gamma") !=
        std::string::npos);
  CHECK(message_of("scenarios:\n  - name: a\n    grid: {count: 2}\n").find("grid.count") != std::string::npos);
  CHECK(message_of("scenarios:\n  - name: a\n  - name: a\n").find("duplicate") != std::string::npos);
  CHECK(message_of("scenarios:\n  - name: a\n    mode: fixed_v\n").find("scenarios[0].speed") != std::string::npos);
  CHECK(message_of("scenarios:\n  - name: a\n    mode: fast\n").find("scenarios[0].mode") != std::string::npos);
  CHECK(message_of("scenarios:\n  - name: ../x\n").find("scenarios[0].name") != std::string::npos);
  CHECK(message_of("output: {formats: [xml]}\n").find("output.formats[0]") != std::string::npos);
  CHECK(message_of("extra: 1\n").find("extra") != std::string::npos);
}

TEST_CASE("emit and parse round-trip") {
  RunConfig c;
  c.output_directory = "somewhere/else";
  c.formats = {CurveFormat::Json, CurveFormat::Csv};
  c.gnuplot = true;
  Scenario s;
  s.name = "odd_values";
  s.description = "detuned: with punctuation, # and quotes '";
  s.params.rabi_frequency = 0.1;
  s.params.detuning = -1.0 / 3.0;
  s.params.thermal_c = 1.6e-4;
  s.params.unit_scale = UnitScale::Rabi;
  s.grid = {-2.5, 7.125, 33};
  s.mode = AveragingMode::Oracle;
  s.speed = 2.0 / 7.0;
  s.quadrature.scheme = QuadratureScheme::AdaptiveSimpson;
  s.oracle.seed = std::numeric_limits<std::uint64_t>::max();
  s.oracle.kind = CorrelationKind::Emission;
  s.analysis.sideband_weights = true;
  c.scenarios.push_back(s);
  CHECK(parse_config(emit_config(c)) == c);
}

TEST_CASE("shipped preset files match the built-in presets") {
  for (const std::string& name : preset_names()) {
    const RunConfig builtin = preset(name);
    CHECK(parse_config(emit_config(builtin)) == builtin);
    const fs::path file = fs::path(MOLLOW_PRESET_DIR) / (name + ".yaml");
    REQUIRE(fs::exists(file));
    CHECK(parse_config(read_text_file(file)) == builtin);
  }
  CHECK_THROWS_AS(preset("fig9"), Error);
}

TEST_CASE("empty scenario list is a successful empty run") {
  const fs::path dir = scratch("empty");
  RunOptions opts;
  opts.output_directory = dir;
  const RunReport r = run(RunConfig{}, opts);
  CHECK(r.scenarios.empty());
  CHECK(exit_code(r) == 0);
  CHECK(fs::exists(dir / "report.json"));
}

TEST_CASE("scenario errors are collected unless fail-fast") {
  RunConfig c = parse_config(
      "scenarios:\n"
      "  - name: broken\n"
      "    params: {wave_number: 0.2, thermal_c: 1.6e-4, gamma: 0.2}\n"
      "    quadrature: {node_count: 8, rel_tolerance: 1e-14}\n"
      "    grid: {min: -1, max: 1, count: 5}\n"
      "  - name: fine\n"
      "    grid: {min: -1, max: 1, count: 5}\n");
  RunOptions opts;
  opts.output_directory = scratch("errors");
  RunReport r = run(c, opts);
  REQUIRE(r.scenarios.size() == 2);
  CHECK(r.scenarios[0].status == ScenarioStatus::Error);
  CHECK(r.scenarios[0].error_code == "QuadratureNotConverged");
  CHECK(r.scenarios[1].status == ScenarioStatus::Ok);
  CHECK(exit_code(r) == 1);
  CHECK(fs::exists(*opts.output_directory / "fine.csv"));
  CHECK(!fs::exists(*opts.output_directory / "broken.csv"));

  opts.fail_fast = true;
  opts.output_directory = scratch("errors_ff");
  r = run(c, opts);
  CHECK(r.scenarios[1].status == ScenarioStatus::Skipped);
  CHECK(!fs::exists(*opts.output_directory / "fine.csv"));
}

TEST_CASE("report hashes match the written files") {
  RunConfig c = parse_config(
      "output: {formats: [csv, json], gnuplot: true}\n"
      "scenarios:\n"
      "  - name: one\n"
      "    mode: fixed_v\n"
      "    speed: 1.5\n"
      "    params: {rabi_frequency: 6, wave_number: 0.5, collision_density: 0.9}\n"
      "    grid: {min: -9, max: 9, count: 901}\n");
  RunOptions opts;
  opts.output_directory = scratch("hashes");
  opts.input_bytes = "raw";
  const RunReport r = run(c, opts);
  REQUIRE(r.success());
  CHECK(r.input_sha256 == sha256_hex("raw"));
  REQUIRE(r.scenarios[0].files.size() == 3);
  for (const OutputFile& f : r.scenarios[0].files) CHECK(sha256_hex(read_text_file(f.path)) == f.sha256);
  CHECK(r.scenarios[0].report->peaks.size() == 3);
  CHECK(curve_from_json(read_text_file(*opts.output_directory / "one.json")) == *r.scenarios[0].curve);
  const std::string report = read_text_file(*opts.output_directory / "report.json");
  CHECK(report.find("\"config_sha256\"") != std::string::npos);
  CHECK(report.find("\"sideband_separation\"") != std::string::npos);
}

TEST_CASE("fig1a and fig2a presets: triplet versus degraded contrast") {
  RunConfig c = preset("fig1a");
  const RunConfig two = preset("fig2a");
  c.scenarios.insert(c.scenarios.end(), two.scenarios.begin(), two.scenarios.end());
  RunOptions opts;
  opts.output_directory = scratch("presets");
  const RunReport r = run(c, opts);
  REQUIRE(r.success());
  std::size_t files = 0;
  for (const ScenarioResult& s : r.scenarios) files += s.files.size();
  CHECK(files == c.scenarios.size());
  for (std::size_t i = 0; i < 3; ++i) CHECK(r.scenarios[i].report->peaks.size() == 3);
  const RunConfig ref = preset("fig1b");
  for (std::size_t i = 0; i < 3; ++i) {
    const double weak = *run(RunConfig{{ref.scenarios[i]}, "unused", {CurveFormat::Csv}, false},
                             RunOptions{.write_files = false})
                             .scenarios[0]
                             .triplet_contrast;
    CHECK(*r.scenarios[3 + i].triplet_contrast < weak);
  }
}
