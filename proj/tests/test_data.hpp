#pragma once

#include "altdiff/altop.hpp"

namespace testdata {

// s = 6, d = 3 operations: the first has three independent error vectors,
// the second only two.
inline constexpr const char* kExample1Text = "n: 6\nd: 3\n1,2: 100\n1,3: 010\n2,3: 001\n";
inline constexpr const char* kExample2Text = "n: 6\nd: 3\n1,2: 101\n1,3: 110\n2,3: 101\n";

inline altdiff::altop::ThetaSpec example1() { return altdiff::altop::parse_theta(kExample1Text); }
inline altdiff::altop::ThetaSpec example2() { return altdiff::altop::parse_theta(kExample2Text); }

}  // namespace testdata
