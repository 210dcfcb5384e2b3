#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace genodesic {

enum class ErrorCode {
  kInvalidInput,
  kDimensionMismatch,
  kUnsupported,
  kSamplingFailure,
  kNumericalFailure,
  kMalformedCsv,
  kMalformedJson,
  kIo,
};

/// Stable machine-readable name, e.g. "E_DIMENSION".
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const char* what) {
  if (!condition) fail(code, what);
}

}  // namespace genodesic
