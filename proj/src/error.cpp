#include "twistcert/error.hpp"

namespace twistcert {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::InvalidWord: return "InvalidWord";
    case ErrorCode::UnknownCurve: return "UnknownCurve";
    case ErrorCode::UnknownClass: return "UnknownClass";
    case ErrorCode::DuplicateCurve: return "DuplicateCurve";
    case ErrorCode::InconsistentLedger: return "InconsistentLedger";
    case ErrorCode::UnknownIntersection: return "UnknownIntersection";
    case ErrorCode::LedgerFrozen: return "LedgerFrozen";
    case ErrorCode::MalformedRibbon: return "MalformedRibbon";
    case ErrorCode::InvalidPennerWord: return "InvalidPennerWord";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::HomologyRankError: return "HomologyRankError";
    case ErrorCode::LiftError: return "LiftError";
    case ErrorCode::WitnessFailure: return "WitnessFailure";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::InconsistentProfile: return "InconsistentProfile";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace twistcert
