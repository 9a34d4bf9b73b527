#include "proxpoint/error.hpp"

namespace proxpoint {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Schema: return "SCHEMA";
    case ErrorCode::Resolution: return "RESOLUTION";
    case ErrorCode::Metric: return "METRIC";
    case ErrorCode::OutOfRange: return "OUT_OF_RANGE";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::NotP: return "NOT_P";
    case ErrorCode::NonFunctional: return "NON_FUNCTIONAL";
    case ErrorCode::ImageOutsideB0: return "IMAGE_OUTSIDE_B0";
    case ErrorCode::CertificationFailed: return "CERTIFICATION_FAILED";
    case ErrorCode::BackendUnsupported: return "BACKEND_UNSUPPORTED";
    case ErrorCode::Disagreement: return "DISAGREEMENT";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

}  // namespace proxpoint
