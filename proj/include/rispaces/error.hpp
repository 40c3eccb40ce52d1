#pragma once

#include <stdexcept>
#include <string>

namespace rispaces {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: partitions that do not tile [0,1], out-of-range parameters.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A map's image tiling or a preimage broke the 1e-12 bijectivity tolerance.
class ToleranceError : public Error {
 public:
  using Error::Error;
};

/// Root bracketing failed (no sign change after the allowed number of doublings).
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver exhausted its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace rispaces
