#pragma once

#include <stdexcept>
#include <string>

namespace qtorus {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live in algebras of different dimension.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Operands carry different deformation matrices.
class ThetaMismatch : public Error {
 public:
  using Error::Error;
};

// A precondition on the input (support, parameter range, mean) is violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A truncation or grid would exceed the configured size budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A numerical procedure failed to reach its tolerance.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

// Malformed input document or unknown name (suite, multiplier, space).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace qtorus
