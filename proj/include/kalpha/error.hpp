#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kalpha {

enum class ErrorCode {
  InvalidArgument,
  InvalidMatrix,
  NoPairableUnits,
  InsufficientScores,
  DegenerateData,
  IncompleteData,
  GroupTooSmall,
  DomainError,
  ParseError,
  UnknownIdentifier,
  EvalError,
  EmptySample,
  ResampleDegenerate,
  RaggedRows,
  UnparseableCell,
  EmptyFile,
  IoError,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the distance-expression parser. position is a 0-based character
// offset into the source; expectation names the token class that was wanted.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t position, std::string expectation,
             const std::string& message)
      : Error(code, message + " at offset " + std::to_string(position)),
        position_(position),
        expectation_(std::move(expectation)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expectation() const noexcept { return expectation_; }

 private:
  std::size_t position_;
  std::string expectation_;
};

}  // namespace kalpha
