#include "tox/error.hpp"

namespace tox {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInterval: return "invalid-interval";
    case ErrorCode::InvalidSize: return "invalid-size";
    case ErrorCode::UnsupportedOrder: return "unsupported-order";
    case ErrorCode::GridMismatch: return "grid-mismatch";
    case ErrorCode::BreakdownSingular: return "breakdown-singular";
    case ErrorCode::IndexOutOfRange: return "index-out-of-range";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::NormalizationViolation: return "normalization-violation";
    case ErrorCode::DepthExceedsDimension: return "depth-exceeds-dimension";
    case ErrorCode::SyntaxError: return "syntax-error";
    case ErrorCode::UnknownIdentifier: return "unknown-identifier";
    case ErrorCode::ArityError: return "arity-error";
    case ErrorCode::EvaluationError: return "evaluation-error";
    case ErrorCode::InvalidProblem: return "invalid-problem";
    case ErrorCode::IoError: return "io-error";
  }
  return "unknown";
}

}  // namespace tox
