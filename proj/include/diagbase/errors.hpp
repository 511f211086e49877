#pragma once

#include <stdexcept>
#include <string>

namespace diagbase {

// Base class for every error raised by the library. The CLI maps
// ResourceError to exit code 2 and everything else to a hard failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedPermutation : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

// A configured cap (order, orbit, memory) would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Parameters outside the hypotheses of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Raised when a self-check fails: this signals a bug, not a math fact.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

class MissingDataError : public Error {
 public:
  using Error::Error;
};

class PrimitivityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace diagbase
