#pragma once

// Alternative operations on F2^n induced by 2-elementary abelian regular
// translation groups, in canonical form.
//
// Canonical form: the weak-key space W is spanned by the last d coordinates,
// the first m = n - d coordinates are "strong". Each a in V has a translation
// x -> x M_a + a with
//
//     M_a = [ I_m  E_a ]      E_a = sum_i a_i E_{e_i},  row j of E_{e_i} = b_{i,j}
//           [ 0    I_d ]
//
// and the induced product x.y = x + y + x o y lives in W.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "altdiff/gf2.hpp"

namespace altdiff::altop {

using gf2::BitMatrix;
using gf2::BitVec;
using gf2::Word;

/// Defining matrix of an operation: symmetric, zero-diagonal array of
/// vectors b_{i,j} in F2^d for 1 <= i, j <= n - d. Only i < j is stored.
class ThetaSpec {
 public:
  ThetaSpec() = default;
  ThetaSpec(int n, int d);

  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }
  int strong_dim() const noexcept { return n_ - d_; }

  /// b_{i,j}, 1-indexed; zero on the diagonal and for unset entries.
  BitVec b(int i, int j) const;
  void set_b(int i, int j, const BitVec& value);
  const std::map<std::pair<int, int>, BitVec>& entries() const noexcept { return entries_; }

  friend bool operator==(const ThetaSpec&, const ThetaSpec&) = default;

 private:
  int n_ = 0;
  int d_ = 0;
  std::map<std::pair<int, int>, BitVec> entries_;
};

struct ValidationReport {
  bool valid = false;
  /// 1-indexed columns of the defining matrix summing to zero when invalid.
  std::vector<int> violating_columns;

  std::string describe() const;
};

/// 2 - (n mod 2) <= d <= n - 2.
bool satisfies_dimension_bound(int n, int d) noexcept;

/// Accepts iff no nontrivial F2 combination of the n - d columns of the
/// defining matrix (each in F2^{d(n-d)}) vanishes. Throws DimensionOutOfRange
/// unless 1 <= d <= n - 2.
ValidationReport validate_theta(const ThetaSpec& spec);

/// Text format: "n: <int>", "d: <int>", then "i,j: <binary of length d>" lines.
/// '#' starts a comment; omitted entries are zero.
ThetaSpec parse_theta(std::string_view text);
std::string render_theta(const ThetaSpec& spec);

/// Full 2^n x 2^n lookup of a o b for n <= 8.
class CircTable {
 public:
  CircTable() = default;

  template <typename Fn>
  static CircTable from_function(int n, Fn&& fn) {
    CircTable t(n);
    const unsigned size = 1U << n;
    for (unsigned x = 0; x < size; ++x)
      for (unsigned y = 0; y < size; ++y)
        t.data_[(x << n) | y] = static_cast<std::uint8_t>(fn(Word{x}, Word{y}));
    return t;
  }
  static CircTable xor_table(int n);

  int n() const noexcept { return n_; }
  unsigned size() const noexcept { return 1U << n_; }
  std::uint8_t operator()(unsigned x, unsigned y) const noexcept { return data_[(x << n_) | y]; }
  std::uint8_t dot(unsigned x, unsigned y) const noexcept {
    return static_cast<std::uint8_t>(x ^ y ^ (*this)(x, y));
  }
  const std::uint8_t* row(unsigned x) const noexcept { return data_.data() + (std::size_t{x} << n_); }

  friend bool operator==(const CircTable&, const CircTable&) = default;

 private:
  explicit CircTable(int n);

  int n_ = 0;
  std::vector<std::uint8_t> data_;
};

class AltOperation {
 public:
  /// Throws InvalidSpec when the defining matrix fails validation.
  static AltOperation build(const ThetaSpec& spec);

  int n() const noexcept { return spec_.n(); }
  int d() const noexcept { return spec_.d(); }
  int strong_dim() const noexcept { return spec_.strong_dim(); }
  const ThetaSpec& spec() const noexcept { return spec_; }

  /// E_{e_i}, an (n - d) x d matrix; zero for i > n - d.
  const BitMatrix& e_matrix(int i) const;
  BitMatrix e_matrix_of(const BitVec& a) const;
  /// M_a of the translation x -> x M_a + a.
  BitMatrix translation_matrix(const BitVec& a) const;

  Word dot(Word x, Word y) const noexcept {
    Word acc = 0;
    const int m = strong_dim();
    for (int i = 0; i < m; ++i) {
      if (!((x >> (n() - 1 - i)) & 1U)) continue;
      const Word* row = &products_[static_cast<std::size_t>(i * m)];
      for (int j = 0; j < m; ++j)
        if ((y >> (n() - 1 - j)) & 1U) acc ^= row[j];
    }
    return acc;
  }
  Word circ(Word x, Word y) const noexcept { return x ^ y ^ dot(x, y); }

  BitVec dot(const BitVec& x, const BitVec& y) const;
  BitVec circ(const BitVec& x, const BitVec& y) const;

  bool is_weak(Word a) const noexcept { return (a >> d()) == 0; }
  std::vector<BitVec> weak_basis() const;
  std::vector<BitVec> error_basis() const;
  int error_dim() const { return static_cast<int>(error_basis().size()); }

  /// Materialized lookup table, present when n <= 8.
  const CircTable* table() const noexcept { return table_ ? &*table_ : nullptr; }
  CircTable make_table() const;

 private:
  explicit AltOperation(ThetaSpec spec);

  ThetaSpec spec_;
  std::vector<BitMatrix> e_matrices_;
  // products_[i*m + j] = b_{i+1,j+1} embedded in the low d bits.
  std::vector<Word> products_;
  std::optional<CircTable> table_;
};

/// Operation on F2^s with d = s - 2 defined by the single vector b = b_{1,2}.
AltOperation two_strong_operation(int s, const BitVec& b);

/// Block-wise composition (o_1, ..., o_b); block 1 holds the most significant
/// s bits of the state.
class ParallelOperation {
 public:
  /// Throws HeterogeneousWidths if the blocks differ in width.
  static ParallelOperation compose(std::vector<AltOperation> blocks);

  int s() const noexcept { return s_; }
  int block_count() const noexcept { return static_cast<int>(blocks_.size()); }
  int n() const noexcept { return s_ * block_count(); }
  const AltOperation& block(int j) const { return blocks_.at(static_cast<std::size_t>(j)); }

  /// Value of block j (0-indexed from the left).
  Word block_value(Word x, int j) const noexcept {
    return (x >> ((block_count() - 1 - j) * s_)) & gf2::low_mask(s_);
  }

  Word circ(Word x, Word y) const noexcept;
  Word dot(Word x, Word y) const noexcept { return x ^ y ^ circ(x, y); }
  BitVec circ(const BitVec& x, const BitVec& y) const;
  BitVec dot(const BitVec& x, const BitVec& y) const;

  bool is_weak(Word a) const noexcept;
  std::vector<BitVec> weak_basis() const;
  std::vector<BitVec> error_basis() const;

 private:
  int s_ = 0;
  std::vector<AltOperation> blocks_;
};

/// {tau_a : a in V} stored as the matrices M_a indexed by a (n <= 8).
class TranslationGroup {
 public:
  struct Origin {
    ThetaSpec spec;
    BitMatrix conjugator;  // the group equals g T_spec g^{-1}
  };

  static TranslationGroup from_operation(const AltOperation& op);
  /// M_a recovered from x -> (x o a) + a; throws InvalidSpec if a translation
  /// is not affine over +.
  static TranslationGroup from_table(const CircTable& table);

  int n() const noexcept { return n_; }
  const BitMatrix& matrix(Word a) const { return matrices_.at(static_cast<std::size_t>(a)); }
  Word translate(Word x, Word a) const noexcept {
    return matrices_[static_cast<std::size_t>(a)].apply(x) ^ a;
  }
  CircTable operation_table() const;
  std::vector<Word> weak_space() const;
  bool is_elementary_abelian_regular() const;

  const std::optional<Origin>& origin() const noexcept { return origin_; }
  void set_origin(Origin origin) { origin_ = std::move(origin); }

  /// Rows of every M_a packed in order of a; equal iff the groups are equal.
  std::vector<Word> fingerprint() const;
  std::string fingerprint_hex() const;

  friend bool operator==(const TranslationGroup& a, const TranslationGroup& b) {
    return a.matrices_ == b.matrices_;
  }

 private:
  friend TranslationGroup conjugate_group(const TranslationGroup& group, const BitMatrix& g);

  int n_ = 0;
  std::vector<BitMatrix> matrices_;
  std::optional<Origin> origin_;
};

/// T^g = g T g^{-1}: x (g tau_a g^{-1}) = x g M_a g^{-1} + a g^{-1}, so the
/// result maps 0 to a g^{-1} with matrix g M_a g^{-1}. Throws
/// SingularConjugator.
TranslationGroup conjugate_group(const TranslationGroup& group, const BitMatrix& g);

/// Every valid defining matrix for the given (n, d) in canonical form.
/// Throws SizeTooLarge beyond 2^24 candidate assignments.
std::vector<ThetaSpec> enumerate_canonical(int n, int d);

/// Draws b_{i,j} uniformly and rejects invalid specs.
ThetaSpec random_valid_spec(int n, int d, std::mt19937_64& rng);

/// Distinct groups obtained by conjugating `base` with every element of
/// GL(n, 2) (n <= 4), in order of first appearance. Each carries its origin.
std::vector<TranslationGroup> enumerate_conjugates(const AltOperation& base);

struct ConjugacyInvariant {
  int n = 0;
  int d = 0;
  int dim_u = 0;

  friend bool operator==(const ConjugacyInvariant&, const ConjugacyInvariant&) = default;
};

ConjugacyInvariant conjugacy_invariant(const AltOperation& op);

/// Conjugacy decided from the invariants: always for d = n - 2, iff dim U
/// agrees for d = n - 3. Other regimes throw WrongRegime.
bool invariants_conjugate(const ConjugacyInvariant& a, const ConjugacyInvariant& b);

}  // namespace altdiff::altop
