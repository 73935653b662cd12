#pragma once

#include <stdexcept>
#include <string>

namespace conelab {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the arguments was violated (zero where nonzero is
// required, mismatched dimensions, reducible modulus, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The requested enumeration or transform exceeds the configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Invalid experiment configuration (CLI flags, config files, instance files).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace conelab
