#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace altdiff {

enum class Errc {
  ParseError,
  SingularMatrix,
  SizeTooLarge,
  NotASubgroup,
  DimensionOutOfRange,
  InvalidSpec,
  WidthMismatch,
  HeterogeneousWidths,
  SingularConjugator,
  WrongRegime,
  NotBijective,
  NotCircAffine,
  NotInHOmega,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the codes above so that
/// front ends can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

  /// Guard errors signal that a request was refused for being too large,
  /// not that the input was wrong.
  bool is_size_guard() const noexcept { return code_ == Errc::SizeTooLarge; }

 private:
  Errc code_;
};

}  // namespace altdiff
