#pragma once

// Classification campaigns: ∘-uniformity spectra of the optimal 4-bit classes
// over the 105 operations on F2^4, and 8-bit campaigns over canonical or
// randomly drawn operations.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "altdiff/altop.hpp"
#include "altdiff/ddt.hpp"
#include "altdiff/parallel.hpp"

namespace altdiff::sboxclass {

using altop::AltOperation;
using altop::CircTable;
using ddt::Sbox;
using gf2::BitMatrix;

/// Uniformity value -> number of candidates (or operations).
using Histogram = std::map<int, std::uint64_t>;

enum class CountMode {
  Pairs,     // one entry per (g1, g2) representative pair
  Distinct,  // identical composite tables counted once
};

struct SpectrumRecord {
  int class_index = 0;
  int op_index = 0;
  Histogram histogram;
  int max_uniformity = 0;
};

/// Canonical b-operation on F2^4 with its H, the coset representatives and
/// the 105 conjugate groups (index 0 is the canonical group).
struct FourBitSetup {
  AltOperation op;
  /// Applied first: one per coset H g.
  std::vector<BitMatrix> input_reps;
  /// Applied last: one per coset g H.
  std::vector<BitMatrix> output_reps;
  std::vector<altop::TranslationGroup> operations;

  /// Throws WrongRegime unless op has n = 4, d = 2.
  static FourBitSetup make(const AltOperation& op);
};

/// Uniformities of x -> G_i(x g2) g1 over all representative pairs for the
/// operation with index `op_index` (conjugated so the canonical
/// representatives can be reused).
SpectrumRecord classify_optimal_4bit(const FourBitSetup& setup, int class_index, int op_index = 0,
                                     CountMode mode = CountMode::Pairs);

/// Same spectrum computed directly for any n = 4, d = 2 operation table:
/// representatives are recomputed for its own H. Used as a cross-check.
SpectrumRecord classify_direct(const CircTable& op, const Sbox& f, CountMode mode = CountMode::Pairs);

/// records[class][op] for the requested classes and all operations.
std::vector<std::vector<SpectrumRecord>> sweep_all_operations(const FourBitSetup& setup,
                                                              const std::vector<int>& classes, CountMode mode,
                                                              const Executor& executor);

inline constexpr std::array<int, 8> kSpectrumColumns = {2, 4, 6, 8, 10, 12, 14, 16};

struct ClassRow {
  int class_index = 0;
  std::array<double, 8> exact{};
  std::array<long, 8> rounded{};
  std::array<std::uint64_t, 8> min{};
  std::array<std::uint64_t, 8> max{};
  double total = 0;
};

/// Averages over the operations of each class.
std::vector<ClassRow> aggregate_classes(const std::vector<std::vector<SpectrumRecord>>& sweep);

/// Printed reference rows G_0..G_15 over kSpectrumColumns.
const std::array<std::array<long, 8>, 16>& reference_class_rows();

struct ClassComparison {
  int class_index = 0;
  bool support_match = false;
  bool counts_match = false;
  long computed_sum = 0;
  long published_sum = 0;
  std::vector<std::string> notes;
};

/// Support compares nonzero columns of the rounded averages.
std::vector<ClassComparison> compare_with_reference(const std::vector<ClassRow>& rows);

/// Header "class,uniformity,count", rounded averages.
std::string class_csv(const std::vector<ClassRow>& rows);

struct CampaignResult {
  std::string sbox;
  int d = 0;
  std::vector<int> per_op;
  Histogram histogram;
};

/// ∘-uniformity of each s-box under every canonical operation on F2^8 with
/// the given d; operations are built once and shared across s-boxes.
std::vector<CampaignResult> campaign_8bit(const std::vector<std::pair<std::string, Sbox>>& sboxes, int d,
                                          const Executor& executor);

/// Histogram over `count` operations drawn by random_valid_spec with per-sample
/// seeds derived from `seed`; identical for any worker count.
CampaignResult campaign_random_ops(const std::string& name, const Sbox& sbox, int d, std::uint64_t count,
                                   std::uint64_t seed, const Executor& executor);

/// Header "sbox,d,uniformity,op_count".
std::string campaign_csv(const std::vector<CampaignResult>& results);

}  // namespace altdiff::sboxclass
