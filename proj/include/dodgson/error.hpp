#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dodgson {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed .dodg / .3dm text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A well-formed value that violates an operation's precondition
/// (even voter count, unknown candidate, index out of range, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace dodgson
