#pragma once

#include <stdexcept>
#include <string>

namespace cohdyn {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad indices, non-physical matrices, invalid parameters.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A fit was requested on data that does not satisfy its preconditions.
class FitError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// |h(t)| > 1 beyond tolerance: the damping map would not be completely positive.
class ModelViolation : public Error {
 public:
  using Error::Error;
};

// Integrator or solver could not make progress.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cohdyn
