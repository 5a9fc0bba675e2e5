#pragma once

#include <stdexcept>
#include <string>

namespace shadowsum {

enum class Errc {
  UnsupportedAlgebra,
  WeylCapExceeded,
  DimensionMismatch,
  NotDominant,
  DenominatorZero,
  InvalidLevel,
  ModularIdentityFailure,
  NotInAlcove,
  OnWall,
  NonIntegerFusion,
  NegativeFusion,
  ParseError,
  DuplicateId,
  ForestGenusMismatch,
  EulerMismatch,
  SideInconsistent,
  ColorNotInAlcove,
  BadAlpha0,
  AlphaNotInSupport,
  InvalidField,
};

const char* errc_name(Errc c);

/// Library error with a machine-readable code; the CLI maps these to
/// {code, message, context} JSON objects.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace shadowsum
