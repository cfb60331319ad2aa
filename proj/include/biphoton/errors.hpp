#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace biphoton {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric argument violates an operation precondition.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// The spatial grid is too coarse to resolve the grating period.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Input carries no usable signal (e.g. an all-zero amplitude).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Failure while reading a measurement file. `line()` is 1-based, 0 when the
/// error is not tied to a particular line.
class ParseError : public Error {
 public:
  enum class Kind { missing_file, bad_header, malformed_row, non_monotone, negative_value, empty };

  ParseError(Kind kind, std::size_t line, const std::string& what)
      : Error(what), kind_(kind), line_(line) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

/// Bad scenario configuration; carries the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what) : Error(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace biphoton
