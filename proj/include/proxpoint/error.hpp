#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace proxpoint {

enum class ErrorCode {
  Schema,
  Resolution,
  Metric,
  OutOfRange,
  DimensionMismatch,
  InvalidArgument,
  NotP,
  NonFunctional,
  ImageOutsideB0,
  CertificationFailed,
  BackendUnsupported,
  Disagreement,
};

/// Stable upper-case name, e.g. "NOT_P". Used verbatim in reports.
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace proxpoint
