#pragma once

#include <stdexcept>
#include <string>

namespace santalo {

/// Base of every error raised by the library.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A body whose convex hull has empty interior, or whose vertices are not in
/// strictly convex position.
class DegenerateBody : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class NumericallySingularEdge : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class SingularMatrix : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class NoConvergence : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class AlreadyOrthogonal : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class PointNotInterior : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// A precondition of an area-sum increasing vertex move failed. The message
/// names the failed condition.
class HypothesisViolated : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class ParallelSupportLines : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

}  // namespace santalo
