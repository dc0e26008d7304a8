#include "pnt/error.hpp"

namespace pnt {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidRange: return "invalid-range";
    case ErrorKind::RangeTooLarge: return "range-too-large";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::EmptySet: return "empty-set";
    case ErrorKind::UndefinedValue: return "undefined-value";
    case ErrorKind::CompositeModulus: return "composite-p";
    case ErrorKind::SigmaOutOfRange: return "sigma-out-of-range";
    case ErrorKind::EpsilonOutOfRange: return "epsilon-out-of-range";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::NoWitness: return "no-witness";
    case ErrorKind::HypothesisViolation: return "hypothesis-violation";
    case ErrorKind::NoZ: return "no-z";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::ConstructionBug: return "construction-bug";
    case ErrorKind::PairingMissing: return "pairing-missing";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::ConfigInvalid: return "config-invalid";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace pnt
