#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twistcert {

enum class ErrorCode {
  InvalidDimension,
  InvalidModulus,
  InvalidWord,
  UnknownCurve,
  UnknownClass,
  DuplicateCurve,
  InconsistentLedger,
  UnknownIntersection,
  LedgerFrozen,
  MalformedRibbon,
  InvalidPennerWord,
  NotPrimitive,
  IterationLimit,
  NotHyperbolic,
  InvalidDegree,
  HomologyRankError,
  LiftError,
  WitnessFailure,
  DegreeTooSmall,
  InconsistentProfile,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library is reported through this exception; `code()`
// is the stable machine-readable part, `what()` carries the context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace twistcert
