#include "mollow/error.hpp"

namespace mollow {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::NonFiniteSpectrum: return "NonFiniteSpectrum";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::NonPhysicalState: return "NonPhysicalState";
    case ErrorCode::InsufficientEquilibration: return "InsufficientEquilibration";
    case ErrorCode::PlateauNotReached: return "PlateauNotReached";
    case ErrorCode::CurveTooShort: return "CurveTooShort";
    case ErrorCode::NotATriplet: return "NotATriplet";
    case ErrorCode::AsymmetricGrid: return "AsymmetricGrid";
    case ErrorCode::NonPositiveMass: return "NonPositiveMass";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

}  // namespace mollow
