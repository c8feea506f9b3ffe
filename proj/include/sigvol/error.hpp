#pragma once

#include <stdexcept>
#include <string>

namespace sigvol {

// Numeric values are shared with the C API status codes in sigvol.h.
enum class ErrorCode : int {
  InvalidArgument = 1,
  Parse = 2,
  DimensionMismatch = 3,
  OutOfRange = 4,
  Degenerate = 5,
  Unsupported = 6,
  Internal = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace sigvol
