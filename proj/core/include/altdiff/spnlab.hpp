#pragma once

// 16-bit toy SPN: four parallel 4-bit s-boxes, a linear layer λ taken from H
// of the parallel operation, and xor with independent round keys. Estimates
// the best differential probability for + and ∘ input differences.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "altdiff/altop.hpp"
#include "altdiff/ddt.hpp"
#include "altdiff/gf2.hpp"
#include "altdiff/parallel.hpp"

namespace altdiff::spnlab {

using altop::ParallelOperation;
using ddt::Sbox;
using gf2::BitMatrix;

inline constexpr int kStateBits = 16;
inline constexpr unsigned kStateSize = 1U << kStateBits;

enum class Flavor { Plus, Circ };
enum class Estimator { Markov, MonteCarlo };

std::string to_string(Flavor f);
std::string to_string(Estimator e);

/// Four copies of the 4-bit operation with b = (0, 1).
ParallelOperation toy_operation();

/// Round function tables shared by every key: x -> λ(S(x)).
class SpnShape {
 public:
  /// Throws WidthMismatch unless sbox is 4-bit and λ is 16 x 16.
  SpnShape(Sbox sbox, BitMatrix lambda);

  const Sbox& sbox() const noexcept { return sbox_; }
  const BitMatrix& lambda() const noexcept { return lambda_; }
  std::uint16_t substitute(std::uint16_t x) const noexcept { return sub_[x]; }
  std::uint16_t linear(std::uint16_t x) const noexcept { return lin_[x]; }
  std::uint16_t round(std::uint16_t x) const noexcept { return round_[x]; }

 private:
  Sbox sbox_;
  BitMatrix lambda_;
  std::vector<std::uint16_t> sub_;
  std::vector<std::uint16_t> lin_;
  std::vector<std::uint16_t> round_;
};

class ToySpn {
 public:
  ToySpn(const SpnShape& shape, std::vector<std::uint16_t> round_keys)
      : shape_(&shape), keys_(std::move(round_keys)) {}

  int rounds() const noexcept { return static_cast<int>(keys_.size()); }
  /// r iterations of s-boxes, λ, then xor with k_i.
  std::uint16_t encrypt(std::uint16_t x) const noexcept {
    for (const auto k : keys_) x = static_cast<std::uint16_t>(shape_->round(x) ^ k);
    return x;
  }

 private:
  const SpnShape* shape_;
  std::vector<std::uint16_t> keys_;
};

/// Whole-state ∘ via two-block byte tables.
class FastCirc {
 public:
  /// Throws WidthMismatch unless op acts on 16 bits.
  explicit FastCirc(const ParallelOperation& op);
  std::uint16_t operator()(std::uint16_t x, std::uint16_t y) const noexcept {
    const unsigned hi = hi_[((x >> 8) << 8) | (y >> 8)];
    const unsigned lo = lo_[((x & 0xFFU) << 8) | (y & 0xFFU)];
    return static_cast<std::uint16_t>((hi << 8) | lo);
  }

 private:
  std::vector<std::uint8_t> hi_;
  std::vector<std::uint8_t> lo_;
};

/// Round keys of long key `key_index` for `run`; a longer key extends a
/// shorter one.
std::vector<std::uint16_t> long_key(std::uint64_t seed, std::uint64_t run, std::uint64_t key_index, int rounds);

/// The sixteen weight-one differences 0x0001 .. 0x8000 in ascending order.
std::vector<std::uint16_t> weight_one_differences();

struct MonteCarloConfig {
  int rounds_lo = 3;
  int rounds_hi = 6;
  std::uint32_t keys = 256;
  std::uint64_t seed = 0;
  std::uint64_t run = 0;
  /// First key index; disjoint samples use disjoint index ranges.
  std::uint64_t key_offset = 0;
  std::vector<std::uint16_t> deltas = weight_one_differences();
  std::vector<Flavor> flavors = {Flavor::Plus, Flavor::Circ};
};

/// best[round - rounds_lo][delta][flavor] with flavor indexed as in Flavor.
struct BestTable {
  int rounds_lo = 0;
  std::vector<std::uint16_t> deltas;
  std::vector<std::vector<std::array<double, 2>>> best;

  double at(int rounds, std::size_t delta, Flavor f) const {
    return best.at(static_cast<std::size_t>(rounds - rounds_lo)).at(delta)[static_cast<std::size_t>(f)];
  }
};

/// For each key, tallies E_k(x) ⋄ E_k(x ⋄ Δ) over all x and returns the
/// largest key-averaged output probability. Unordered pairs {x, x ⋄ Δ} are
/// visited once with weight 2. Keys are split across workers; integer
/// tallies make the result independent of the worker count.
BestTable best_differential_montecarlo(const SpnShape& shape, const ParallelOperation& op,
                                       const MonteCarloConfig& config, const Executor& executor);

/// Key-averaged Markov propagation of a full difference distribution.
class MarkovModel {
 public:
  /// Throws NotInHOmega if λ is not in H of `op` (needed for ∘).
  MarkovModel(const SpnShape& shape, const ParallelOperation& op);

  /// Max output mass after each round in [lo, hi].
  std::vector<double> best(std::uint16_t delta, Flavor flavor, int rounds_lo, int rounds_hi) const;
  /// Full distribution after `rounds`.
  std::vector<double> distribution(std::uint16_t delta, Flavor flavor, int rounds) const;

 private:
  void step(std::vector<double>& v, std::vector<double>& scratch, Flavor flavor) const;

  const SpnShape* shape_;
  std::array<std::array<double, 16>, 16> ddt_plus_{};
  std::array<std::array<double, 16>, 16> ddt_circ_{};
  std::array<std::array<double, 16>, 16> key_circ_{};
};

BestTable best_differential_markov(const SpnShape& shape, const ParallelOperation& op, int rounds_lo,
                                   int rounds_hi, const std::vector<std::uint16_t>& deltas,
                                   const Executor& executor);

struct ExperimentConfig {
  int runs = 30;
  int rounds_lo = 3;
  int rounds_hi = 6;
  std::uint32_t keys = 256;
  std::uint64_t seed = 0;
  std::vector<Estimator> estimators = {Estimator::Markov, Estimator::MonteCarlo};

  static ExperimentConfig desk();
  static ExperimentConfig full_scale();
};

struct ExperimentRecord {
  int run = 0;
  int rounds = 0;
  std::uint64_t lambda_seed = 0;
  Estimator estimator = Estimator::Markov;
  Flavor flavor = Flavor::Plus;
  std::uint16_t delta_in = 0;
  double p_best = 0;
  double neglog2_p = 0;
  /// (-log2 p+) - (-log2 p∘) for the same Δin and estimator.
  double gap = 0;
};

struct RunSummary {
  int run = 0;
  int rounds = 0;
  std::uint64_t lambda_seed = 0;
  Estimator estimator = Estimator::Markov;
  double p_circ = 0;
  double p_plus = 0;
  double neglog2_p_circ = 0;
  double gap = 0;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;
  std::vector<RunSummary> summaries;
};

std::uint64_t lambda_seed_for(std::uint64_t seed, int run);

/// Ordered by run, rounds, estimator, Δin, then flavor (plus before ∘).
ExperimentResult run_experiment(const ExperimentConfig& config, const Executor& executor);

/// Header run,rounds,lambda_seed,estimator,flavor,delta_in_hex,p_best,neglog2_p,gap.
std::string records_csv(const std::vector<ExperimentRecord>& records);
/// Header run,rounds,lambda_seed,estimator,p_circ,p_plus,neglog2_p_circ,gap.
std::string summary_csv(const std::vector<RunSummary>& summaries);

}  // namespace altdiff::spnlab
