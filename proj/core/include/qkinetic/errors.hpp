#pragma once

#include <stdexcept>
#include <string>

namespace qkinetic {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid construction parameters or experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Fugacity inversion failed (no root, or iteration cap hit).
class InversionError : public Error {
 public:
  using Error::Error;
};

/// The requested Bose state lies at or beyond the z -> 1 limit.
class DegenerateBose : public InversionError {
 public:
  using InversionError::InversionError;
};

class NonConvergence : public InversionError {
 public:
  using InversionError::InversionError;
};

/// A moment update produced rho <= 0 or e <= 0.
class NonpositiveDensity : public Error {
 public:
  using Error::Error;
};

/// NaN/Inf detected by a watchdog.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace qkinetic
