#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pnt {

enum class ErrorKind {
  InvalidRange,
  RangeTooLarge,
  OutOfRange,
  EmptySet,
  UndefinedValue,
  CompositeModulus,
  SigmaOutOfRange,
  EpsilonOutOfRange,
  Precondition,
  NoWitness,
  HypothesisViolation,
  NoZ,
  BudgetExceeded,
  ConstructionBug,
  PairingMissing,
  Overflow,
  ConfigInvalid,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace pnt
