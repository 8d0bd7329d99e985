#pragma once

#include <stdexcept>
#include <string>

namespace photostat {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters, unsupported regime/order combinations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Overflow, cancellation, non-convergence, truncation breach.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed input files.
class DataFormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace photostat
