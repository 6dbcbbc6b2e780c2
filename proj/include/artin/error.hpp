#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace artin {

enum class ErrorKind {
  Parse,
  UnknownVertex,
  OddLabel,
  LabelTooSmall,
  FcViolation,
  DuplicateEdge,
  DuplicateVertex,
  SelfLoop,
  GraphMismatch,
  LengthCapExceeded,
  UnmappedGenerator,
  StarIsFull,
  HypothesisViolated,
  NotInKernel,
  NotAnAutomorphism,
  PreconditionFailed,
  BudgetExceeded,
  Internal,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::OddLabel: return "OddLabel";
    case ErrorKind::LabelTooSmall: return "LabelTooSmall";
    case ErrorKind::FcViolation: return "FcViolation";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::DuplicateVertex: return "DuplicateVertex";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::GraphMismatch: return "GraphMismatch";
    case ErrorKind::LengthCapExceeded: return "LengthCapExceeded";
    case ErrorKind::UnmappedGenerator: return "UnmappedGenerator";
    case ErrorKind::StarIsFull: return "StarIsFull";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NotInKernel: return "NotInKernel";
    case ErrorKind::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace artin
