#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pfk {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (bad index, wrong alphabet,
/// non-prime modulus, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed one of the configured desk-scale limits.
class SizeLimit : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace pfk
