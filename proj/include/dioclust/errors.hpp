#pragma once

#include <stdexcept>
#include <string>

namespace dioclust {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input: CSV/edge-list files, method spec strings.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Bad call: dimension mismatch, out-of-range parameter.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A network or ultrametric that breaks its invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Internal invariant failure, e.g. a dioid power that does not stabilize.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dioclust
