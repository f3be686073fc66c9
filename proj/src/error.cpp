#include "kalpha/error.hpp"

namespace kalpha {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::NoPairableUnits: return "NoPairableUnits";
    case ErrorCode::InsufficientScores: return "InsufficientScores";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::IncompleteData: return "IncompleteData";
    case ErrorCode::GroupTooSmall: return "GroupTooSmall";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::EvalError: return "EvalError";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::ResampleDegenerate: return "ResampleDegenerate";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::UnparseableCell: return "UnparseableCell";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace kalpha
