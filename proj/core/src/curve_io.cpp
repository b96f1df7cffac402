#include "mollow/curve_io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "mollow/error.hpp"

namespace mollow {

using nlohmann::json;

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

std::string curve_to_csv(const SpectrumCurve& curve) {
  std::string out = "omega,intensity\n";
  out.reserve(out.size() + curve.size() * 48);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out += format_double(curve.omega[i]);
    out += ',';
    out += format_double(curve.intensity[i]);
    out += '\n';
  }
  return out;
}

namespace {

json params_to_json(const PhysicalParams& p) {
  return {{"rabi_frequency", p.rabi_frequency}, {"detuning", p.detuning},
          {"gamma", p.gamma},                   {"wave_number", p.wave_number},
          {"collision_density", p.collision_density}, {"thermal_c", p.thermal_c},
          {"unit_scale", std::string(to_string(p.unit_scale))}};
}

PhysicalParams params_from_json(const json& j) {
  PhysicalParams p;
  p.rabi_frequency = j.at("rabi_frequency").get<double>();
  p.detuning = j.at("detuning").get<double>();
  p.gamma = j.at("gamma").get<double>();
  p.wave_number = j.at("wave_number").get<double>();
  p.collision_density = j.at("collision_density").get<double>();
  p.thermal_c = j.at("thermal_c").get<double>();
  p.unit_scale = unit_scale_from_string(j.at("unit_scale").get<std::string>());
  return p;
}

AveragingMode mode_from_json(const std::string& text) {
  for (const AveragingMode m : {AveragingMode::FixedSpeed, AveragingMode::Thermal, AveragingMode::Oracle}) {
    if (to_string(m) == text) return m;
  }
  throw Error(ErrorCode::ParseError, "unknown averaging mode '" + text + "'");
}

}  // namespace

std::string curve_to_json(const SpectrumCurve& curve) {
  const CurveProvenance& prov = curve.provenance;
  json p;
  p["params"] = params_to_json(prov.params);
  p["mode"] = std::string(to_string(prov.mode));
  if (prov.rts) {
    p["rts"] = {{"amplitude", prov.rts->amplitude},
                {"switch_rate", prov.rts->switch_rate},
                {"speed", prov.rts->speed}};
  }
  if (prov.quadrature) {
    p["quadrature"] = {{"scheme", std::string(to_string(prov.quadrature->scheme))},
                       {"node_count", prov.quadrature->node_count},
                       {"truncation_speed", prov.quadrature->truncation_speed},
                       {"rel_tolerance", prov.quadrature->rel_tolerance}};
  }
  if (prov.quadrature_error) p["quadrature_error"] = *prov.quadrature_error;
  if (prov.oracle) {
    p["oracle"] = {{"n_trajectories", prov.oracle->n_trajectories},
                   {"seed", prov.oracle->seed},
                   {"tau_max", prov.oracle->tau_max},
                   {"kind", prov.oracle->kind},
                   {"std_error", prov.oracle->std_error}};
  }
  json j;
  j["omega"] = curve.omega;
  j["intensity"] = curve.intensity;
  j["provenance"] = std::move(p);
  return j.dump(1) + "\n";
}

SpectrumCurve curve_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    SpectrumCurve curve;
    curve.omega = j.at("omega").get<std::vector<double>>();
    curve.intensity = j.at("intensity").get<std::vector<double>>();
    const json& p = j.at("provenance");
    CurveProvenance& prov = curve.provenance;
    prov.params = params_from_json(p.at("params"));
    prov.mode = mode_from_json(p.at("mode").get<std::string>());
    if (p.contains("rts")) {
      const json& r = p["rts"];
      prov.rts = RtsParams{r.at("amplitude").get<double>(), r.at("switch_rate").get<double>(),
                           r.at("speed").get<double>()};
    }
    if (p.contains("quadrature")) {
      const json& q = p["quadrature"];
      QuadratureSpec spec;
      spec.scheme = quadrature_scheme_from_string(q.at("scheme").get<std::string>());
      spec.node_count = q.at("node_count").get<int>();
      spec.truncation_speed = q.at("truncation_speed").get<double>();
      spec.rel_tolerance = q.at("rel_tolerance").get<double>();
      prov.quadrature = spec;
    }
    if (p.contains("quadrature_error")) prov.quadrature_error = p["quadrature_error"].get<double>();
    if (p.contains("oracle")) {
      const json& o = p["oracle"];
      OracleProvenance op;
      op.n_trajectories = o.at("n_trajectories").get<std::uint64_t>();
      op.seed = o.at("seed").get<std::uint64_t>();
      op.tau_max = o.at("tau_max").get<double>();
      op.kind = o.at("kind").get<std::string>();
      op.std_error = o.at("std_error").get<std::vector<double>>();
      prov.oracle = std::move(op);
    }
    curve.validate();
    return curve;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("curve JSON: ") + e.what());
  }
}

SpectrumCurve curve_from_csv(std::string_view text) {
  SpectrumCurve curve;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != "omega,intensity") throw Error(ErrorCode::ParseError, "CSV line 1: bad header");
      continue;
    }
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    double w = 0.0;
    double s = 0.0;
    const bool ok = comma != std::string_view::npos &&
                    std::from_chars(line.data(), line.data() + comma, w).ec == std::errc() &&
                    std::from_chars(line.data() + comma + 1, line.data() + line.size(), s).ec == std::errc();
    if (!ok) throw Error(ErrorCode::ParseError, "CSV line " + std::to_string(line_no) + ": malformed row");
    curve.omega.push_back(w);
    curve.intensity.push_back(s);
  }
  return curve;
}

std::string gnuplot_script(const SpectrumCurve& curve, const std::string& data_file,
                           const std::string& title) {
  std::ostringstream out;
  out << "set datafile separator ','\n"
      << "set key off\n"
      << "set title '" << title << "'\n"
      << "set xlabel 'omega (" << to_string(curve.provenance.params.unit_scale) << " units)'\n"
      << "set ylabel 'S(omega)'\n"
      << "plot '" << data_file << "' using 1:2 skip 1 with lines\n";
  return out.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  file.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!file) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

std::string emit_curve(const SpectrumCurve& curve, const std::filesystem::path& path,
                       CurveFormat format) {
  curve.validate();
  std::string bytes = format == CurveFormat::Csv ? curve_to_csv(curve) : curve_to_json(curve);
  write_text_file(path, bytes);
  return bytes;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::IoError, "SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

}  // namespace mollow
