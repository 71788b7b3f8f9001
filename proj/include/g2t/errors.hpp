#pragma once

#include <stdexcept>
#include <string>

namespace g2t {

enum class ErrorKind {
  DimensionMismatch,
  DegreeMismatch,
  IndexOutOfRange,
  NotInvariant,
  NotLieAlgebra,
  NotStable,
  NotDefinite,
  NotCompatible,
  NotPositive,
  NotNormalized,
  NotSelfDual,
  NotG2T,
  NotCentral,
  ZeroLeeForm,
  InvalidParameters,
  SpanNotClosed,
  OrientationFlip,
  StepTooLarge,
  ResidualTooLarge,
  ParseError,
  UnknownName,
  IOError,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace g2t
