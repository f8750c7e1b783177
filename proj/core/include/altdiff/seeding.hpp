#pragma once

#include <cstdint>

namespace altdiff {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for a task addressed by up to two indices under a master seed; the
/// value does not depend on which worker runs the task.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t i, std::uint64_t j = 0) noexcept {
  return mix64(mix64(mix64(master) ^ i) ^ (j * 0xd1b54a32d192ed03ULL));
}

}  // namespace altdiff
