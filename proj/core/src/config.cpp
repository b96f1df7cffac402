#include "mollow/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <set>
#include <string>

#include "mollow/error.hpp"

namespace mollow {

std::string_view to_string(CurveFormat format) noexcept {
  return format == CurveFormat::Csv ? "csv" : "json";
}

CurveFormat curve_format_from_string(std::string_view text) {
  if (text == "csv") return CurveFormat::Csv;
  if (text == "json") return CurveFormat::Json;
  throw Error(ErrorCode::ValidationError, "format must be 'csv' or 'json', got '" + std::string(text) + "'");
}

namespace {

AveragingMode mode_from_string(std::string_view text) {
  if (text == "fixed_v") return AveragingMode::FixedSpeed;
  if (text == "thermal") return AveragingMode::Thermal;
  if (text == "oracle") return AveragingMode::Oracle;
  throw Error(ErrorCode::ValidationError,
              "mode must be 'fixed_v', 'thermal' or 'oracle', got '" + std::string(text) + "'");
}

std::string location(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  if (mark.is_null()) return "";
  return " (line " + std::to_string(mark.line + 1) + ", column " + std::to_string(mark.column + 1) + ")";
}

[[noreturn]] void invalid(const std::string& key, const std::string& what, const YAML::Node& node = {}) {
  throw Error(ErrorCode::ValidationError, key + ": " + what + (node ? location(node) : ""));
}

// Reads the keys of one mapping, rejecting anything not handled.
class Section {
 public:
  // An absent or null node reads as an empty mapping.
  Section(const YAML::Node& node, std::string path) : path_(std::move(path)) {
    if (node && !node.IsNull()) {
      if (!node.IsMap()) invalid(path_, "expected a mapping", node);
      node_ = node;
    }
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    seen_.insert(key);
    if (!node_) return;
    const YAML::Node value = std::as_const(*node_)[key];
    if (!value) return;
    if (!value.IsScalar()) invalid(child(key), "expected a scalar", value);
    try {
      out = value.as<T>();
    } catch (const YAML::BadConversion&) {
      invalid(child(key), "cannot convert '" + value.Scalar() + "'", value);
    }
  }

  template <typename T>
  void read_enum(const std::string& key, T& out, T (*convert)(std::string_view)) {
    std::string text;
    seen_.insert(key);
    if (!node_ || !std::as_const(*node_)[key]) return;
    read(key, text);
    try {
      out = convert(text);
    } catch (const Error& e) {
      invalid(child(key), e.message(), std::as_const(*node_)[key]);
    }
  }

  std::optional<YAML::Node> sub(const std::string& key) {
    seen_.insert(key);
    if (!node_) return std::nullopt;
    const YAML::Node value = std::as_const(*node_)[key];
    if (!value || value.IsNull()) return std::nullopt;
    return value;
  }

  void finish() const {
    if (!node_) return;
    for (const auto& entry : *node_) {
      const std::string key = entry.first.as<std::string>();
      if (!seen_.count(key)) invalid(child(key), "unknown key", entry.first);
    }
  }

  std::string child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  std::optional<YAML::Node> node_;
  std::string path_;
  std::set<std::string> seen_;
};

bool safe_stem(const std::string& name) {
  if (name.empty() || name == "report") return false;
  for (const char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return name.front() != '.';
}

Scenario parse_scenario(const YAML::Node& node, const std::string& path) {
  Scenario s;
  Section top(node, path);
  top.read("name", s.name);
  top.read("description", s.description);
  top.read_enum("mode", s.mode, mode_from_string);
  top.read("speed", s.speed);
  const bool has_speed = static_cast<bool>(node["speed"]);

  {
    Section p(top.sub("params").value_or(YAML::Node()), top.child("params"));
    p.read("rabi_frequency", s.params.rabi_frequency);
    p.read("detuning", s.params.detuning);
    p.read("gamma", s.params.gamma);
    p.read("wave_number", s.params.wave_number);
    p.read("collision_density", s.params.collision_density);
    p.read("thermal_c", s.params.thermal_c);
    p.read_enum("unit_scale", s.params.unit_scale, unit_scale_from_string);
    p.finish();
  }
  {
    Section g(top.sub("grid").value_or(YAML::Node()), top.child("grid"));
    g.read("min", s.grid.min);
    g.read("max", s.grid.max);
    g.read("count", s.grid.count);
    g.finish();
  }
  {
    Section q(top.sub("quadrature").value_or(YAML::Node()), top.child("quadrature"));
    q.read_enum("scheme", s.quadrature.scheme, quadrature_scheme_from_string);
    q.read("node_count", s.quadrature.node_count);
    q.read("truncation_speed", s.quadrature.truncation_speed);
    q.read("rel_tolerance", s.quadrature.rel_tolerance);
    q.finish();
  }
  {
    Section o(top.sub("oracle").value_or(YAML::Node()), top.child("oracle"));
    o.read("n_traj", s.oracle.n_traj);
    o.read("seed", s.oracle.seed);
    o.read_enum("kind", s.oracle.kind, correlation_kind_from_string);
    o.read("tau_max", s.oracle.tau_max);
    o.read("burn_in", s.oracle.burn_in);
    o.read("tau_points", s.oracle.tau_points);
    o.finish();
  }
  {
    Section a(top.sub("analysis").value_or(YAML::Node()), top.child("analysis"));
    a.read("peaks", s.analysis.peaks);
    a.read("symmetry", s.analysis.symmetry);
    a.read("center_of_gravity", s.analysis.center_of_gravity);
    a.read("sideband_weights", s.analysis.sideband_weights);
    a.read("min_prominence_fraction", s.analysis.min_prominence_fraction);
    a.finish();
  }
  top.finish();

  if (s.mode != AveragingMode::Thermal && !has_speed) {
    invalid(top.child("speed"), "required for fixed_v and oracle modes", node);
  }
  return s;
}

// Rewraps a validation error from a component so it names the full key path.
void with_prefix(const std::string& prefix, const std::function<void()>& check) {
  try {
    check();
  } catch (const Error& e) {
    throw Error(ErrorCode::ValidationError, prefix + "." + e.message());
  }
}

}  // namespace

void RunConfig::validate() const {
  if (output_directory.empty()) invalid("output.directory", "must not be empty");
  if (formats.empty()) invalid("output.formats", "must list at least one format");
  std::set<std::string> names;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const Scenario& s = scenarios[i];
    const std::string path = "scenarios[" + std::to_string(i) + "]";
    if (!safe_stem(s.name)) {
      invalid(path + ".name", "must be a non-empty file stem of [A-Za-z0-9_.-] (got '" + s.name + "')");
    }
    if (!names.insert(s.name).second) invalid(path + ".name", "duplicate scenario name '" + s.name + "'");
    with_prefix(path + ".params", [&] { s.params.validate(); });
    with_prefix(path + ".quadrature", [&] { s.quadrature.validate(); });
    if (s.grid.count < 3) invalid(path + ".grid.count", "must be >= 3");
    if (!(s.grid.min < s.grid.max)) invalid(path + ".grid.min", "must be < grid.max");
    if (!std::isfinite(s.grid.min) || !std::isfinite(s.grid.max)) invalid(path + ".grid", "bounds must be finite");
    if (!(s.speed >= 0) || !std::isfinite(s.speed)) invalid(path + ".speed", "must be finite and >= 0");
    if (s.oracle.n_traj < 1) invalid(path + ".oracle.n_traj", "must be >= 1");
    if (!(s.oracle.tau_max >= 0)) invalid(path + ".oracle.tau_max", "must be >= 0 (0 = default)");
    if (!(s.oracle.burn_in >= 0)) invalid(path + ".oracle.burn_in", "must be >= 0 (0 = default)");
    if (s.oracle.tau_points < 16) invalid(path + ".oracle.tau_points", "must be >= 16");
    if (!(s.analysis.min_prominence_fraction >= 0)) {
      invalid(path + ".analysis.min_prominence_fraction", "must be >= 0");
    }
  }
}

RunConfig parse_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(e.mark.line + 1) + ", column " +
                                           std::to_string(e.mark.column + 1) + ": " + e.msg);
  }

  RunConfig config;
  if (!root || root.IsNull()) {
    config.validate();
    return config;
  }
  if (!root.IsMap()) invalid("<document>", "expected a mapping at top level", root);

  Section top(root, "");
  {
    Section out(top.sub("output").value_or(YAML::Node()), "output");
    out.read("directory", config.output_directory);
    out.read("gnuplot", config.gnuplot);
    if (const auto sub = out.sub("formats")) {
      const YAML::Node& formats = *sub;
      if (!formats.IsSequence()) invalid("output.formats", "expected a list", formats);
      config.formats.clear();
      for (std::size_t i = 0; i < formats.size(); ++i) {
        try {
          config.formats.push_back(curve_format_from_string(formats[i].as<std::string>()));
        } catch (const std::exception&) {
          invalid("output.formats[" + std::to_string(i) + "]", "must be 'csv' or 'json'", formats[i]);
        }
      }
    }
    out.finish();
  }
  if (const auto sub = top.sub("scenarios")) {
    const YAML::Node& scenarios = *sub;
    if (!scenarios.IsSequence()) invalid("scenarios", "expected a list", scenarios);
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
      config.scenarios.push_back(parse_scenario(scenarios[i], "scenarios[" + std::to_string(i) + "]"));
    }
  }
  top.finish();
  config.validate();
  return config;
}

std::string emit_config(const RunConfig& config) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "directory" << YAML::Value << config.output_directory;
  out << YAML::Key << "formats" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const CurveFormat f : config.formats) out << std::string(to_string(f));
  out << YAML::EndSeq;
  out << YAML::Key << "gnuplot" << YAML::Value << config.gnuplot;
  out << YAML::EndMap;

  out << YAML::Key << "scenarios" << YAML::Value << YAML::BeginSeq;
  for (const Scenario& s : config.scenarios) {
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << s.name;
    if (!s.description.empty()) out << YAML::Key << "description" << YAML::Value << s.description;
    out << YAML::Key << "mode" << YAML::Value << std::string(to_string(s.mode));
    if (s.mode != AveragingMode::Thermal || s.speed != 0.0) {
      out << YAML::Key << "speed" << YAML::Value << s.speed;
    }

    out << YAML::Key << "params" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "rabi_frequency" << YAML::Value << s.params.rabi_frequency;
    out << YAML::Key << "detuning" << YAML::Value << s.params.detuning;
    out << YAML::Key << "gamma" << YAML::Value << s.params.gamma;
    out << YAML::Key << "wave_number" << YAML::Value << s.params.wave_number;
    out << YAML::Key << "collision_density" << YAML::Value << s.params.collision_density;
    out << YAML::Key << "thermal_c" << YAML::Value << s.params.thermal_c;
    out << YAML::Key << "unit_scale" << YAML::Value << std::string(to_string(s.params.unit_scale));
    out << YAML::EndMap;

    out << YAML::Key << "grid" << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "min" << YAML::Value << s.grid.min;
    out << YAML::Key << "max" << YAML::Value << s.grid.max;
    out << YAML::Key << "count" << YAML::Value << s.grid.count;
    out << YAML::EndMap;

    out << YAML::Key << "quadrature" << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "scheme" << YAML::Value << std::string(to_string(s.quadrature.scheme));
    out << YAML::Key << "node_count" << YAML::Value << s.quadrature.node_count;
    out << YAML::Key << "truncation_speed" << YAML::Value << s.quadrature.truncation_speed;
    out << YAML::Key << "rel_tolerance" << YAML::Value << s.quadrature.rel_tolerance;
    out << YAML::EndMap;

    out << YAML::Key << "oracle" << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "n_traj" << YAML::Value << s.oracle.n_traj;
    out << YAML::Key << "seed" << YAML::Value << s.oracle.seed;
    out << YAML::Key << "kind" << YAML::Value << std::string(to_string(s.oracle.kind));
    out << YAML::Key << "tau_max" << YAML::Value << s.oracle.tau_max;
    out << YAML::Key << "burn_in" << YAML::Value << s.oracle.burn_in;
    out << YAML::Key << "tau_points" << YAML::Value << s.oracle.tau_points;
    out << YAML::EndMap;

    out << YAML::Key << "analysis" << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "peaks" << YAML::Value << s.analysis.peaks;
    out << YAML::Key << "symmetry" << YAML::Value << s.analysis.symmetry;
    out << YAML::Key << "center_of_gravity" << YAML::Value << s.analysis.center_of_gravity;
    out << YAML::Key << "sideband_weights" << YAML::Value << s.analysis.sideband_weights;
    out << YAML::Key << "min_prominence_fraction" << YAML::Value << s.analysis.min_prominence_fraction;
    out << YAML::EndMap;

    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace mollow
