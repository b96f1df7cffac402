#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mollow/analysis.hpp"
#include "mollow/config.hpp"
#include "mollow/spectrum_curve.hpp"

namespace mollow {

struct RunOptions {
  bool fail_fast = false;
  unsigned threads = 0;  // MOLLOW_RTS_THREADS still wins
  std::optional<std::filesystem::path> output_directory;
  std::optional<CurveFormat> format;  // replaces config formats
  std::optional<std::uint64_t> seed;  // replaces every oracle seed
  /// Raw bytes of the config file, hashed into the report when present.
  std::optional<std::string> input_bytes;
  bool write_files = true;
};

struct OutputFile {
  std::string path;
  std::string format;
  std::string sha256;
};

enum class ScenarioStatus { Ok, Error, Skipped };

struct ScenarioResult {
  std::string name;
  ScenarioStatus status = ScenarioStatus::Skipped;
  std::string error_code;
  std::string error_message;
  std::optional<SpectrumCurve> curve;
  std::optional<PeakReport> report;
  std::optional<double> triplet_contrast;
  std::vector<OutputFile> files;
};

struct RunReport {
  std::string config_sha256;  // of the canonical emitted config
  std::optional<std::string> input_sha256;
  std::vector<ScenarioResult> scenarios;

  bool success() const;
};

/// Analysis options for a scenario, with the sideband windows resolved.
AnalysisOptions analysis_options(const Scenario& scenario);

/// Computes one scenario's curve. Throws mollow::Error.
SpectrumCurve compute_curve(const Scenario& scenario, unsigned threads = 0);

/// Runs every scenario, writes `<out>/<name>.<fmt>` per format and
/// `<out>/report.json`. Per-scenario errors are collected unless fail_fast,
/// in which case the remaining scenarios are marked skipped.
RunReport run(const RunConfig& config, const RunOptions& options = {});

std::string report_to_json(const RunReport& report);

/// 0 on success, 1 if any scenario errored.
int exit_code(const RunReport& report);

}  // namespace mollow
