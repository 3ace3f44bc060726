#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rpsym {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression or manifold text. `position()` is a byte offset into
/// the text that was being parsed (for manifold files, into the offending
/// line), `line()` is 1-based and 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position, std::size_t line = 0)
      : Error(format(message, position, line)), message_(message), position_(position), line_(line) {}

  /// The message without location.
  const std::string& message() const noexcept { return message_; }
  std::size_t position() const noexcept { return position_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& message, std::size_t position, std::size_t line) {
    std::string out;
    if (line != 0) out += "line " + std::to_string(line) + ", ";
    out += "column " + std::to_string(position + 1) + ": " + message;
    return out;
  }

  std::string message_;
  std::size_t position_;
  std::size_t line_;
};

/// An operation was applied outside its domain: division by zero, a pole,
/// an unknown coordinate, exponent overflow, mismatched coordinate systems.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The input is well formed but violates a geometric requirement
/// (singular frame, degenerate metric, g(xi,xi) != -1, not an (LCS) manifold).
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Indicates a bug, not bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace rpsym
