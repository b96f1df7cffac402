#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mollow/config.hpp"
#include "mollow/spectrum_curve.hpp"

namespace mollow {

/// Shortest "%.17g" rendering, locale independent.
std::string format_double(double value);

/// "omega,intensity" header then one row per sample, LF line endings.
std::string curve_to_csv(const SpectrumCurve& curve);

/// Samples plus full provenance.
std::string curve_to_json(const SpectrumCurve& curve);

/// Inverse of curve_to_json. Throws ParseError on malformed input.
SpectrumCurve curve_from_json(std::string_view text);

/// Inverse of curve_to_csv for the samples; provenance is left default.
SpectrumCurve curve_from_csv(std::string_view text);

/// gnuplot script plotting `data_file` (a CSV written by curve_to_csv).
std::string gnuplot_script(const SpectrumCurve& curve, const std::string& data_file,
                           const std::string& title);

/// Writes `contents` to `path`, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

/// Writes the curve in the requested format and returns the bytes written.
std::string emit_curve(const SpectrumCurve& curve, const std::filesystem::path& path,
                       CurveFormat format);

/// Lower-case hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

}  // namespace mollow
