#include "gmbv/error.hpp"

namespace gmbv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidWalk: return "InvalidWalk";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::NotACover: return "NotACover";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotStartingAtZero: return "NotStartingAtZero";
    case ErrorCode::BadHead: return "BadHead";
    case ErrorCode::NotACircuit: return "NotACircuit";
    case ErrorCode::DuplicateCircuit: return "DuplicateCircuit";
    case ErrorCode::EdgeNotOnAnyCircuit: return "EdgeNotOnAnyCircuit";
    case ErrorCode::MergeViolation: return "MergeViolation";
    case ErrorCode::BaseNotPreserved: return "BaseNotPreserved";
    case ErrorCode::FirstStepMismatch: return "FirstStepMismatch";
    case ErrorCode::WordTraceMismatch: return "WordTraceMismatch";
    case ErrorCode::WordNotStartingWithOne: return "WordNotStartingWithOne";
    case ErrorCode::EmptyWord: return "EmptyWord";
    case ErrorCode::UnknownLetter: return "UnknownLetter";
    case ErrorCode::LetterNeverUsed: return "LetterNeverUsed";
    case ErrorCode::NormalizationNotFoundWithinBound: return "NormalizationNotFoundWithinBound";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::InvalidDiagram: return "InvalidDiagram";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::NotAPath: return "NotAPath";
    case ErrorCode::MaxPathAtDepth: return "MaxPathAtDepth";
    case ErrorCode::MinPathAtDepth: return "MinPathAtDepth";
    case ErrorCode::InsufficientMargin: return "InsufficientMargin";
    case ErrorCode::InsufficientDepth: return "InsufficientDepth";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace gmbv
