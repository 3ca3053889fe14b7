#pragma once

#include <stdexcept>
#include <string>

namespace lrinv {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad caller input: out-of-contract arguments, malformed configs.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Evaluation time outside a schedule's interval.
class DomainError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Parameterization that cannot be represented (vanishing omega, hyperbolic
/// su(1,1) coupling, unsupported Hamiltonian terms).
class RegimeError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Integer quantity too large for the requested representation.
class RangeError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A numerical certification failed. Carries no input blame.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The invariant parameterization hit its coordinate pole (sin a ~ 0).
class SingularityError : public NumericalError {
 public:
  SingularityError(const std::string& what, double time)
      : NumericalError(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

class AccuracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TransformationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ContinuationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace lrinv
