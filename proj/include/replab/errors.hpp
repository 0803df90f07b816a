#pragma once

#include <stdexcept>
#include <string>

namespace replab {

// Base of every library error. The CLI maps each subclass to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument: out-of-range vertex, malformed profile, size mismatch.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A configured resource bound (enumeration budget, table size, tree size) was hit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Mathematically undefined request: non-colorable graph, log of non-positive value.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A rejection loop ran out of attempts.
class RetryExhaustedError : public Error {
 public:
  using Error::Error;
};

}  // namespace replab
