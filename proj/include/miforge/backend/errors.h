#pragma once

#include <string>

#include "miforge/core/errors.h"

namespace miforge::backend {

/// A provider could not be reached or answered with a protocol error.
class TransportError : public Error {
 public:
  TransportError(const std::string& what, int attempts = 1)
      : Error(what), attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

class EmptyCompletionError : public Error {
 public:
  EmptyCompletionError(const std::string& what, int attempts)
      : Error(what), attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

/// The model never produced a reply satisfying the schema.
class StructuredOutputError : public Error {
 public:
  StructuredOutputError(const std::string& what, std::string raw, int attempts)
      : Error(what), raw_(std::move(raw)), attempts_(attempts) {}
  const std::string& raw_text() const { return raw_; }
  int attempts() const { return attempts_; }

 private:
  std::string raw_;
  int attempts_;
};

}  // namespace miforge::backend
