#pragma once

#include <stdexcept>
#include <string>

namespace parallelo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Planar basis whose Voronoi cell is not a strict hexagon.
class DegenerateCell : public Error {
 public:
  using Error::Error;
};

class InputOffHyperplane : public Error {
 public:
  using Error::Error;
};

class UnsupportedFamily : public Error {
 public:
  using Error::Error;
};

/// A vertex set reaches too close to the box boundary for its neighborhood
/// to be complete.
class MarginViolation : public Error {
 public:
  using Error::Error;
};

/// A set that was required to avoid gauge distance 1 does not.
class NotAvoiding : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same quantity disagree.
class CrossCheckMismatch : public Error {
 public:
  using Error::Error;
};

class BoundViolated : public Error {
 public:
  using Error::Error;
};

class UnknownComponentType : public Error {
 public:
  using Error::Error;
};

}  // namespace parallelo
