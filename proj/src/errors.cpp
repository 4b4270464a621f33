#include "cantorval/errors.hpp"

namespace cantorval {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SYNTAX_ERROR";
    case ErrorCode::BadLetter: return "BAD_LETTER";
    case ErrorCode::EmptyImage: return "EMPTY_IMAGE";
    case ErrorCode::ResourceLimit: return "RESOURCE_LIMIT";
    case ErrorCode::NoLegalSeed: return "NO_LEGAL_SEED";
    case ErrorCode::NotPrimitive: return "NOT_PRIMITIVE";
    case ErrorCode::NonUnimodular: return "NON_UNIMODULAR";
    case ErrorCode::DegenerateField: return "DEGENERATE_FIELD";
    case ErrorCode::NotPisotUnit: return "NOT_PISOT_UNIT";
    case ErrorCode::DivisionByZero: return "DIVISION_BY_ZERO";
    case ErrorCode::FieldMismatch: return "FIELD_MISMATCH";
    case ErrorCode::SingularSystem: return "SINGULAR_SYSTEM";
    case ErrorCode::NonIntervalWindow: return "NON_INTERVAL_WINDOW";
    case ErrorCode::NotInvertible: return "NOT_INVERTIBLE";
    case ErrorCode::ClosureExplosion: return "CLOSURE_EXPLOSION";
    case ErrorCode::EmptyGraph: return "EMPTY_GRAPH";
    case ErrorCode::IoError: return "IO_ERROR";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

bool is_rejection(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::BadLetter:
    case ErrorCode::EmptyImage:
    case ErrorCode::NoLegalSeed:
    case ErrorCode::NotPrimitive:
    case ErrorCode::NonUnimodular:
    case ErrorCode::DegenerateField:
    case ErrorCode::NotPisotUnit:
    case ErrorCode::NonIntervalWindow:
    case ErrorCode::NotInvertible:
      return true;
    default:
      return false;
  }
}

bool is_resource_limit(ErrorCode code) {
  return code == ErrorCode::ResourceLimit || code == ErrorCode::ClosureExplosion;
}

}  // namespace cantorval
