#pragma once

#include <stdexcept>
#include <string>

namespace mfn {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point, vector or matrix has the wrong number of coordinates.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A parameter lies outside its admissible interval.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// The minimum Frobenius norm problem on the given set has no unique solution.
class NotPoisedError : public Error {
 public:
  using Error::Error;
};

/// The solved model misses the interpolation data by more than the tolerance.
class ResidualError : public Error {
 public:
  using Error::Error;
};

}  // namespace mfn
