#include "genodesic/error.hpp"

namespace genodesic {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "E_INVALID_INPUT";
    case ErrorCode::kDimensionMismatch: return "E_DIMENSION";
    case ErrorCode::kUnsupported: return "E_UNSUPPORTED";
    case ErrorCode::kSamplingFailure: return "E_SAMPLING";
    case ErrorCode::kNumericalFailure: return "E_NUMERICAL";
    case ErrorCode::kMalformedCsv: return "E_MALFORMED_CSV";
    case ErrorCode::kMalformedJson: return "E_MALFORMED_JSON";
    case ErrorCode::kIo: return "E_IO";
  }
  return "E_UNKNOWN";
}

}  // namespace genodesic
