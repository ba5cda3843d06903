#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curvelab {

enum class ErrorKind {
  ZeroWDegree,
  NoConvergence,
  BoundaryZero,
  DegreeBound,
  DegenerateSlice,
  NonSquareFree,
  ProbeTooLarge,
  ProbeFalsePositive,
  NotOnCurve,
  TrivialPolygon,
  OrderTooSmall,
  EmptyDomain,
  PathJump,
  OnDiscriminant,
  TruncationDominates,
  NotGood,
  DegreeCap,
  IdenticallyZero,
  SchemaError,
  DuplicateTerm,
};

std::string_view to_string(ErrorKind kind);

/// Domain error raised by every curvelab operation. The kind is stable and
/// machine-readable; the message is for humans.
class CurveError : public std::runtime_error {
 public:
  CurveError(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace curvelab
