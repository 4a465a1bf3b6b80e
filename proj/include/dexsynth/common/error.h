#pragma once

#include <stdexcept>
#include <string>

namespace dexsynth {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text or file (mesh, URDF, JSON, contact file).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input parsed but violates a documented invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace dexsynth
