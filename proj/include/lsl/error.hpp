#pragma once

#include <stdexcept>
#include <string>

namespace lsl {

// Base for every error raised by the library. The CLI maps CapacityError to
// exit code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of the operation (x outside [0,1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A parameter record or request violates an invariant (b < 3, j > k, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A request would exceed a configured size budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace lsl
