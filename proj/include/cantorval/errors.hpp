#pragma once

#include <stdexcept>
#include <string>

namespace cantorval {

enum class ErrorCode {
  SyntaxError,
  BadLetter,
  EmptyImage,
  ResourceLimit,
  NoLegalSeed,
  NotPrimitive,
  NonUnimodular,
  DegenerateField,
  NotPisotUnit,
  DivisionByZero,
  FieldMismatch,
  SingularSystem,
  NonIntervalWindow,
  NotInvertible,
  ClosureExplosion,
  EmptyGraph,
  IoError,
  Internal,
};

// Stable machine-readable name, e.g. NON_UNIMODULAR.
const char* error_code_name(ErrorCode code);

// Input-rejection codes map to CLI exit 2; resource limits to exit 3;
// everything else is an internal fault (exit 1).
bool is_rejection(ErrorCode code);
bool is_resource_limit(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace cantorval
