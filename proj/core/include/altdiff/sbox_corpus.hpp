#pragma once

// Embedded s-boxes: the sixteen optimal 4-bit class representatives, the
// toy-cipher s-box and three standard 8-bit s-boxes.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "altdiff/ddt.hpp"

namespace altdiff::corpus {

inline constexpr int kOptimalClassCount = 16;

/// G_0 .. G_15; throws DimensionOutOfRange outside 0..15.
const ddt::Sbox& optimal_class(int index);
const ddt::Sbox& gamma();
const ddt::Sbox& aes();
const ddt::Sbox& camellia();
const ddt::Sbox& kuznyechik();

/// Case-insensitive: "G0".."G15", "gamma", "aes", "camellia", "kuznyechik".
std::optional<ddt::Sbox> lookup(std::string_view name);
std::vector<std::string> names();

}  // namespace altdiff::corpus
