#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qclock {

enum class ErrorKind {
  input,     // malformed or unsupported input, failed precondition
  parse,     // positioned syntax or semantic error in a text format
  guard,     // a configured size limit was exceeded
  internal,  // two independent code paths disagreed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Source position, 1-based. Column counts bytes.
struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;
};

inline std::string to_string(SourcePos pos) {
  return "line " + std::to_string(pos.line) + ", column " +
         std::to_string(pos.column);
}

class ParseError : public Error {
 public:
  ParseError(SourcePos pos, const std::string& message)
      : Error(ErrorKind::parse, to_string(pos) + ": " + message),
        pos_(pos),
        message_(message) {}

  SourcePos pos() const noexcept { return pos_; }
  const std::string& message() const noexcept { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

struct Diagnostic {
  SourcePos pos;
  std::string message;
};

[[noreturn]] inline void throw_input(const std::string& what) {
  throw Error(ErrorKind::input, what);
}

[[noreturn]] inline void throw_internal(const std::string& what) {
  throw Error(ErrorKind::internal, "internal error: " + what);
}

}  // namespace qclock
