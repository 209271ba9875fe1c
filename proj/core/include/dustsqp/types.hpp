#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace dustsqp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Base class for every error raised by the solver library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A registry lookup named a problem that does not exist.
class UnknownProblemError : public Error {
 public:
  using Error::Error;
};

/// A constraint row with a vanishing gradient but nonzero value.
class DegenerateConstraintError : public Error {
 public:
  using Error::Error;
};

/// A Hessian model lost positive definiteness or produced a singular
/// reduced system.
class HessianError : public Error {
 public:
  using Error::Error;
};

/// Invalid solver parameters or a malformed configuration file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dustsqp
