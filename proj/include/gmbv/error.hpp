#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gmbv {

enum class ErrorCode {
  // digraph
  NotSurjective,
  DanglingEdge,
  DuplicateEdge,
  DuplicateVertex,
  UnknownVertex,
  BudgetExceeded,
  InvalidWalk,
  // covering
  NotAHomomorphism,
  NotACover,
  TypeMismatch,
  IndexOutOfRange,
  NotStartingAtZero,
  BadHead,
  // gm
  NotACircuit,
  DuplicateCircuit,
  EdgeNotOnAnyCircuit,
  MergeViolation,
  BaseNotPreserved,
  FirstStepMismatch,
  WordTraceMismatch,
  WordNotStartingWithOne,
  EmptyWord,
  UnknownLetter,
  LetterNeverUsed,
  NormalizationNotFoundWithinBound,
  NotNormalized,
  // bratteli
  InvalidDiagram,
  InvalidOrder,
  NotAPath,
  MaxPathAtDepth,
  MinPathAtDepth,
  // arrays
  InsufficientMargin,
  InsufficientDepth,
  // io
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// All library failures. `code()` is the machine-readable part, `what()` the
/// human-readable one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gmbv
