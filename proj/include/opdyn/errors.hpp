#pragma once

#include <stdexcept>
#include <string>

namespace opdyn {

/// Base class of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad inputs or violated preconditions. The CLI maps these to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidStateError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidParameterError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// The designated truth agent has outgoing edges.
class InvalidTruthError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A learner has outdegree zero where the degree matrix must be invertible.
class SingularDegreeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnsupportedSequenceError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnsupportedAnalysisError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Not enough usable samples in the requested fit window.
class UnfittableError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : ValidationError(source + ":" + std::to_string(line) + ": " + what),
        line_number(line) {}
  int line_number;
};

/// I/O and other non-validation failures. CLI exit code 1.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace opdyn
