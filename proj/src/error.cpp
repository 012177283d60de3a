#include "qconn/error.hpp"

namespace qconn {

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegreeExceeded: return "DegreeExceeded";
    case ErrorKind::InvalidContext: return "InvalidContext";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorKind::VanishingFactor: return "VanishingFactor";
    case ErrorKind::NonTerminating: return "NonTerminating";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::UnknownRow: return "UnknownRow";
    case ErrorKind::UnknownPair: return "UnknownPair";
    case ErrorKind::BindingError: return "BindingError";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorKind::VariableMismatch: return "VariableMismatch";
    case ErrorKind::MixedContexts: return "MixedContexts";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NonMonic: return "NonMonic";
    case ErrorKind::NotExpansionCapable: return "NotExpansionCapable";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SamplingExhausted: return "SamplingExhausted";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Unknown";
}

}  // namespace qconn
