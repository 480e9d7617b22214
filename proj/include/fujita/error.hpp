#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fujita {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown vertex name or index out of range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// A graph-core invariant was violated at construction (loop, asymmetric
/// weight, nonpositive measure, disconnected vertex set, ...).
class GraphInvariantError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The truncation window does not contain the region an operation needs.
class WindowTooSmall : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Malformed input text; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A configuration value violates a documented constraint.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A time step produced an invalid (negative or non-finite) state.
class StepError : public Error {
 public:
  using Error::Error;
};

}  // namespace fujita
