#include "shadowsum/error.hpp"

namespace shadowsum {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::UnsupportedAlgebra: return "UnsupportedAlgebra";
    case Errc::WeylCapExceeded: return "WeylCapExceeded";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotDominant: return "NotDominant";
    case Errc::DenominatorZero: return "DenominatorZero";
    case Errc::InvalidLevel: return "InvalidLevel";
    case Errc::ModularIdentityFailure: return "ModularIdentityFailure";
    case Errc::NotInAlcove: return "NotInAlcove";
    case Errc::OnWall: return "OnWall";
    case Errc::NonIntegerFusion: return "NonIntegerFusion";
    case Errc::NegativeFusion: return "NegativeFusion";
    case Errc::ParseError: return "ParseError";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::ForestGenusMismatch: return "ForestGenusMismatch";
    case Errc::EulerMismatch: return "EulerMismatch";
    case Errc::SideInconsistent: return "SideInconsistent";
    case Errc::ColorNotInAlcove: return "ColorNotInAlcove";
    case Errc::BadAlpha0: return "BadAlpha0";
    case Errc::AlphaNotInSupport: return "AlphaNotInSupport";
    case Errc::InvalidField: return "InvalidField";
  }
  return "UnknownError";
}

}  // namespace shadowsum
