#pragma once

#include <stdexcept>
#include <string>

namespace glingam {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied arguments that violate a precondition.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// Exact search was asked to enumerate more variables than its guard allows.
class ProblemTooLargeError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

/// A covariance block stayed ill-conditioned after ridge regularization.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// A sample coordinate has zero variance, so no distance scale exists.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Model parameters do not describe a valid chain graph (e.g. I - B singular).
class ModelInvalidError : public Error {
 public:
  using Error::Error;
};

}  // namespace glingam
