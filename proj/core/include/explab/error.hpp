#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace explab {

/// Base class for every error raised by the library. Messages are stable and
/// short ("prime mismatch", "degenerate character", ...) so callers and tests
/// can match on them.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A truncated kernel/cokernel computation hit the degree cap without a
/// certificate.
class CertificateError : public Error {
 public:
  using Error::Error;
};

/// Invalid request: unknown suite name, bad prime or rank.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Operator-text syntax error. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace explab
