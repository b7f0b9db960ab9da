#pragma once

#include <stdexcept>
#include <string>

namespace gsco {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or option combinations.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Malformed text input. `line()` is 1-based, 0 when unknown.
class ParseError : public ConfigError {
public:
  ParseError(const std::string& what, std::size_t line)
      : ConfigError(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Node or vector index outside its valid range.
class RangeError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

/// Random instance could not be built from the requested spec.
class GenerationError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

/// Reading or writing files failed.
class IoError : public Error {
public:
  using Error::Error;
};

/// Non-finite values, failed convergence of an inner numeric routine.
class NumericError : public Error {
public:
  using Error::Error;
};

/// Refusal to run an exhaustive routine above its size cap.
class SizeError : public Error {
public:
  using Error::Error;
};

/// A support on which the input vector vanishes; no direction exists.
class DegenerateDirectionError : public NumericError {
public:
  using NumericError::NumericError;
};

}  // namespace gsco
