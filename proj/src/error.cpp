#include "lossrisk/error.hpp"

namespace lossrisk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NonIntegrable: return "NonIntegrable";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::MissingDerivative: return "MissingDerivative";
    case ErrorCode::ExperimentFailed: return "ExperimentFailed";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace lossrisk
