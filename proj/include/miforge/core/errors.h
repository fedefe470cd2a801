#pragma once

#include <stdexcept>
#include <string>

namespace miforge {

/// Base class for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Out-of-order append to a DialogueState.
class SequencingError : public Error {
 public:
  using Error::Error;
};

/// A metric that is undefined for its input (empty sets, zero denominators).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace miforge
