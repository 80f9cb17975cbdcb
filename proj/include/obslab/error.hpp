#pragma once

#include <stdexcept>
#include <string>

namespace obslab {

enum class ErrorKind {
  DimensionMismatch,
  ParseError,
  NotArtinian,
  NotLocalNormalized,
  NotAnnihilated,
  NotWellDefined,
  TruncationExceeded,
  FeasibilityExceeded,
  NotRegular,
  SequenceMismatch,
  BadBidegree,
  DivisionFailure,
  HypothesisViolated,
  InvalidInput,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` distinguishes the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace obslab
