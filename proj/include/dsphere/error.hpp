#pragma once

#include <stdexcept>
#include <string>

namespace dsphere {

enum class ErrorKind {
  DegenerateExtent,
  CellNotInComplex,
  Unreachable,
  NoFittingCycle,
  NotSeparating,
  CycleFitFailed,
  FillingNotFound,
  CodimensionUnsupported,
  InterpolationFailed,
  ReplacementNotManifold,
  ParseError,
  ValidationFailed,
  ReplayMismatch,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

/// Library-wide exception. Every failure the library raises carries one of
/// the ErrorKind tags so callers can dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dsphere
