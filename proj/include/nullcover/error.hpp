#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace nullcover {

/// Failure categories. Each maps onto one CLI exit code.
enum class ErrorKind {
  schema,         ///< malformed input (exit 2)
  precondition,   ///< operation precondition not met (exit 3)
  cap_exceeded,   ///< enumeration or verification cap hit (exit 4)
  internal,       ///< result contradicts a proven statement; always a bug (exit 10)
};

inline int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::schema: return 2;
    case ErrorKind::precondition: return 3;
    case ErrorKind::cap_exceeded: return 4;
    case ErrorKind::internal: return 10;
  }
  return 1;
}

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::schema: return "schema";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::cap_exceeded: return "cap_exceeded";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

/// Base exception. `code()` is a short stable identifier such as
/// "NoTranslator" or "DimensionMismatch".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

[[noreturn]] inline void fail_schema(const std::string& code, const std::string& msg) {
  throw Error(ErrorKind::schema, code, msg);
}
[[noreturn]] inline void fail_precondition(const std::string& code, const std::string& msg) {
  throw Error(ErrorKind::precondition, code, msg);
}
[[noreturn]] inline void fail_cap(const std::string& code, const std::string& msg) {
  throw Error(ErrorKind::cap_exceeded, code, msg);
}
[[noreturn]] inline void fail_internal(const std::string& code, const std::string& msg) {
  throw Error(ErrorKind::internal, code, msg);
}

/// Limits guarding exhaustive work. Exceeding one aborts; nothing is sampled.
struct Caps {
  std::uint64_t enumeration = std::uint64_t{1} << 20;
  std::uint64_t verification = std::uint64_t{1} << 24;
};

}  // namespace nullcover
