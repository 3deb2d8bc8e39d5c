#pragma once

#include <stdexcept>
#include <string>

namespace horomink {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad dimensions, non-unit directions, negative parameters.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// The body collapsed to the origin (some paired parameter is zero).
class DegenerateBody : public Error {
 public:
  using Error::Error;
};

/// Query point lies inside the polytope where an exterior point is required.
class PointInside : public Error {
 public:
  using Error::Error;
};

/// No rescaling t > 0 reaches the requested constraint level.
class Unreachable : public Error {
 public:
  using Error::Error;
};

/// Measure is not invariant under the antipodal map.
class NotEven : public Error {
 public:
  using Error::Error;
};

/// Measure directions are not a subset of the polytope's directions.
class MismatchedDirections : public Error {
 public:
  using Error::Error;
};

}  // namespace horomink
