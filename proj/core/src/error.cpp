#include "altdiff/error.hpp"

namespace altdiff {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::ParseError: return "ParseError";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::SizeTooLarge: return "SizeTooLarge";
    case Errc::NotASubgroup: return "NotASubgroup";
    case Errc::DimensionOutOfRange: return "DimensionOutOfRange";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::WidthMismatch: return "WidthMismatch";
    case Errc::HeterogeneousWidths: return "HeterogeneousWidths";
    case Errc::SingularConjugator: return "SingularConjugator";
    case Errc::WrongRegime: return "WrongRegime";
    case Errc::NotBijective: return "NotBijective";
    case Errc::NotCircAffine: return "NotCircAffine";
    case Errc::NotInHOmega: return "NotInHOmega";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace altdiff
