#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace etri {

// Stable error categories. The numeric values double as CLI exit codes and
// C API status codes, so they must not be reordered.
enum class ErrorCode {
  Invariant = 1,
  Parse = 2,
  Numeric = 3,
  Argument = 4,
  Io = 5,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string kind, const std::string& message)
      : std::runtime_error(message), code_(code), kind_(std::move(kind)) {}

  ErrorCode code() const { return code_; }
  const std::string& kind() const { return kind_; }

private:
  ErrorCode code_;
  std::string kind_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& kind,
                              const std::string& message) {
  throw Error(code, kind, kind + ": " + message);
}

}  // namespace etri
