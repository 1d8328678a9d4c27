#include "gksl/error.hpp"

namespace gksl {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotHermiticityPreserving: return "NotHermiticityPreserving";
    case ErrorCode::NotTraceAnnihilating: return "NotTraceAnnihilating";
    case ErrorCode::InternalConsistency: return "InternalConsistency";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::UnsatisfiableClass: return "UnsatisfiableClass";
    case ErrorCode::UnsortedTimes: return "UnsortedTimes";
    case ErrorCode::SingularResolvent: return "SingularResolvent";
    case ErrorCode::LambdaTooSmall: return "LambdaTooSmall";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace gksl
