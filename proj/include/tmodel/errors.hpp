#pragma once

#include <stdexcept>
#include <string>

namespace tmodel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid run parameters (bad dimension, non-positive cutoff, incompatible
/// system/initial-condition pairing, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An operation was called with arguments that violate its preconditions.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A mathematical object is undefined for the given input (e.g. the Leray
/// projector at k = 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Power-law fit could not be formed from the supplied samples.
class FitError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tmodel
