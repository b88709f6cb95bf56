#pragma once

#include <stdexcept>
#include <string>

namespace eplab {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A square-root radicand (or similar) left the real domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Division by a vanishing amplitude (v = 0, u = 0, ...).
class SingularityError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Parameter pattern for which a closed form needs the logarithmic case.
class DegenerateParameters : public Error {
 public:
  using Error::Error;
};

class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace eplab
