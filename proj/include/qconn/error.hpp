#pragma once

#include <stdexcept>
#include <string>

namespace qconn {

enum class ErrorKind {
  DegreeExceeded,
  InvalidContext,
  DivisionByZero,
  DenominatorVanishes,
  VanishingFactor,
  NonTerminating,
  UnknownFamily,
  UnknownRow,
  UnknownPair,
  BindingError,
  PreconditionViolated,
  DegenerateLeadingCoefficient,
  VariableMismatch,
  MixedContexts,
  ShapeMismatch,
  NonMonic,
  NotExpansionCapable,
  ParseError,
  SamplingExhausted,
  UsageError,
};

const char* kind_name(ErrorKind kind);

// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qconn
