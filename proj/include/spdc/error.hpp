#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spdc {

enum class ErrorCode {
  OutOfTransparencyRange,
  NoRootInBracket,
  MultipleRoots,
  MaxIterationsExceeded,
  DegenerateAcceptance,
  InvalidGeometry,
  InvalidArgument,
  NegativeIntensity,
  WrongRegime,
  StepCountTooSmall,
  QuadratureNotConverged,
  DegenerateGroupIndices,
  ParseError,
  ValidationError,
  MissingModel,
  IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

  // Configuration and usage problems, as opposed to numerical failures.
  bool is_input_error() const noexcept {
    return code_ == ErrorCode::ParseError || code_ == ErrorCode::ValidationError ||
           code_ == ErrorCode::IoError;
  }

 private:
  ErrorCode code_;
  std::string detail_;
};

// ValidationError carrying the offending configuration key.
class ValidationError : public Error {
 public:
  ValidationError(std::string key, const std::string& what)
      : Error(ErrorCode::ValidationError, key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfTransparencyRange: return "OutOfTransparencyRange";
    case ErrorCode::NoRootInBracket: return "NoRootInBracket";
    case ErrorCode::MultipleRoots: return "MultipleRoots";
    case ErrorCode::MaxIterationsExceeded: return "MaxIterationsExceeded";
    case ErrorCode::DegenerateAcceptance: return "DegenerateAcceptance";
    case ErrorCode::InvalidGeometry: return "InvalidGeometry";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NegativeIntensity: return "NegativeIntensity";
    case ErrorCode::WrongRegime: return "WrongRegime";
    case ErrorCode::StepCountTooSmall: return "StepCountTooSmall";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::DegenerateGroupIndices: return "DegenerateGroupIndices";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::MissingModel: return "MissingModel";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace spdc
