#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fca {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands built over universes of different sizes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Duplicate, missing, or malformed attribute/object names.
class NamingError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message, const std::string& source = {})
      : Error((source.empty() ? "" : source + ": ") + (line == 0 ? "" : "line " + std::to_string(line) + ": ") +
              message),
        line_(line),
        detail_(message) {}

  /// 1-based line number, or 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

}  // namespace fca
