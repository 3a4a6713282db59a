#pragma once

#include <stdexcept>
#include <string>

namespace weylkit {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: wrong shapes, non-Hermitian data, bad schema. The CLI maps
// these to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Failures of a numerical procedure on valid input. The CLI maps these to
// exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A scalar function was evaluated outside its domain (NaN/Inf result, real
// argument where a non-real one is required).
class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class IllConditionedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Im F(i) has a kernel, so the function cannot be normalized.
class NotStrictError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace weylkit
