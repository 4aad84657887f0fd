#pragma once

#include <stdexcept>
#include <string>

namespace qhball {

enum class ErrorCode {
  InvalidArgument = 1,
  OutsideDomain,
  Antipodal,
  VerticalTangent,
  Disconnected,
  BracketFailure,
  Io,
};

/// Exception carried through the C++ core; the C API maps `code()` onto
/// `qhb_status`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qhball
