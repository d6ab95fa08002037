#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lossrisk {

enum class ErrorCode {
  InvalidInput,
  DomainError,
  NonIntegrable,
  Overflow,
  TooLarge,
  DegenerateInput,
  PreconditionViolated,
  MissingDerivative,
  ExperimentFailed,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this exception; the code
// identifies the failure class, the message carries the detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace lossrisk
