#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cifc {

enum class ErrorCode {
  NegativeProbability,
  RowSumMismatch,
  InvalidParameter,
  SpecCoverage,
  AlphabetMismatch,
  UnknownVariable,
  UnknownSchema,
  NotApplicable,
  FactorizationViolation,
  Infeasible,
  Unbounded,
  IdentityViolation,
  ContainmentViolation,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; the code distinguishes the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cifc
