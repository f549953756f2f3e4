#pragma once

#include <stdexcept>
#include <string>

namespace tox {

enum class ErrorCode {
  InvalidInterval,
  InvalidSize,
  UnsupportedOrder,
  GridMismatch,
  BreakdownSingular,
  IndexOutOfRange,
  DimensionMismatch,
  NormalizationViolation,
  DepthExceedsDimension,
  SyntaxError,
  UnknownIdentifier,
  ArityError,
  EvaluationError,
  InvalidProblem,
  IoError,
};

// Stable machine-readable spelling, e.g. "grid-mismatch".
const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse errors additionally carry the 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& message, std::size_t position)
      : Error(code, message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace tox
