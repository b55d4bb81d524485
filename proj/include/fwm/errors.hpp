#pragma once

#include <stdexcept>
#include <string>

namespace fwm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (configuration, arguments).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Failure of a numerical stage; the CLI maps every subclass to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the documented domain (wavelength range, profile window,
/// complex-erf domain).
class RangeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Evaluation hit a singular point (Sellmeier pole, k^(2)=0, tau_p^(2)=0).
class EvaluationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ModeCutoffError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class FitQualityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Quadrature or iteration did not reach the requested accuracy.
class AccuracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Caller broke an operation precondition (e.g. unnormalized JSA grid).
class ContractError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fwm
