#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace altdiff::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitSizeGuard = 4;

/// Runs one subcommand; args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace altdiff::cli
