#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mollow {

enum class ErrorCode {
  DegenerateDenominator,
  NonFiniteSpectrum,
  DomainError,
  QuadratureNotConverged,
  NonPhysicalState,
  InsufficientEquilibration,
  PlateauNotReached,
  CurveTooShort,
  NotATriplet,
  AsymmetricGrid,
  NonPositiveMass,
  InvalidGrid,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix that what() carries.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace mollow
