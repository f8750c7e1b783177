#pragma once

// Bit-packed linear algebra over F2.
//
// Coordinates are 1-indexed in the textual convention: coordinate x_1 is the
// leftmost character of a binary string and the most significant bit of the
// packed word. A vector of width w therefore stores x_i at bit (w - i).
// Vectors are row vectors acted on from the right: x -> xM.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace altdiff::gf2 {

using Word = std::uint64_t;

inline constexpr int kMaxWidth = 64;

constexpr Word low_mask(int width) {
  return width >= 64 ? ~Word{0} : ((Word{1} << width) - 1);
}

class BitVec {
 public:
  BitVec() = default;
  BitVec(int width, Word bits);

  static BitVec zero(int width) { return BitVec(width, 0); }
  /// e_coord, 1-indexed.
  static BitVec unit(int width, int coord);
  static BitVec parse_binary(std::string_view text);
  /// `width` defaults to four bits per hex digit.
  static BitVec parse_hex(std::string_view text, int width = -1);

  int width() const noexcept { return width_; }
  Word word() const noexcept { return bits_; }

  bool get(int coord) const;
  BitVec with(int coord, bool value) const;
  int weight() const noexcept;
  bool is_zero() const noexcept { return bits_ == 0; }

  std::string to_binary() const;
  std::string to_hex() const;

  friend BitVec operator+(const BitVec& a, const BitVec& b);
  friend bool operator==(const BitVec&, const BitVec&) = default;
  friend std::strong_ordering operator<=>(const BitVec&, const BitVec&) = default;

 private:
  int width_ = 0;
  Word bits_ = 0;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols);

  static BitMatrix zero(int rows, int cols) { return BitMatrix(rows, cols); }
  static BitMatrix identity(int n);
  static BitMatrix from_rows(int cols, std::span<const Word> rows);
  static BitMatrix from_rows(std::span<const BitVec> rows);
  /// One binary string per row; blank lines and surrounding spaces are ignored.
  static BitMatrix parse(std::string_view text);
  static BitMatrix from_strings(std::initializer_list<std::string_view> rows);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  /// Rows and columns are 0-indexed here (row r is coordinate r + 1).
  Word row_word(int r) const { return data_[static_cast<std::size_t>(r)]; }
  BitVec row(int r) const { return BitVec(cols_, row_word(r)); }
  std::span<const Word> row_words() const noexcept { return data_; }
  bool at(int r, int c) const;
  void set(int r, int c, bool value);
  void set_row(int r, Word bits);

  BitMatrix block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const BitMatrix& blk);

  /// x (rows bits) times this matrix.
  Word apply(Word x) const noexcept {
    Word out = 0;
    for (int i = 0; i < rows_; ++i)
      if ((x >> (rows_ - 1 - i)) & 1U) out ^= data_[static_cast<std::size_t>(i)];
    return out;
  }
  BitVec apply(const BitVec& x) const;

  BitMatrix transpose() const;
  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);

  /// Row-per-line binary rendering terminated by a newline.
  std::string to_string() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;
  friend std::strong_ordering operator<=>(const BitMatrix&, const BitMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Word> data_;
};

struct BitMatrixHash {
  std::size_t operator()(const BitMatrix& m) const noexcept { return m.hash(); }
};

int rank(const BitMatrix& m);
bool is_invertible(const BitMatrix& m);
/// Throws Errc::SingularMatrix.
BitMatrix inverse(const BitMatrix& m);
/// Some x with x M = b, if one exists.
std::optional<BitVec> solve(const BitMatrix& m, const BitVec& b);
/// Basis of {x : xM = 0}; each word selects a combination of rows.
std::vector<Word> left_kernel(const BitMatrix& m);
/// Rank of a list of packed row vectors.
int rank_of_words(std::span<const Word> rows);

/// All of GL(s, 2) in lexicographic row order. Throws SizeTooLarge for s > 4.
std::vector<BitMatrix> enumerate_gl(int s);
/// Product formula prod_{i<s} (2^s - 2^i).
std::uint64_t gl_order(int s);
BitMatrix random_invertible(int n, std::mt19937_64& rng);

enum class CosetSide {
  Left,   // g H
  Right,  // H g
};

using MatrixPredicate = std::function<bool(const BitMatrix&)>;

/// One representative per coset of the subgroup selected by `member`, taking
/// the first group element (in input order) of each coset. Throws NotASubgroup
/// if the predicate fails the closure sanity checks or the cosets fail to tile
/// the group.
std::vector<BitMatrix> coset_representatives(std::span<const BitMatrix> group,
                                             const MatrixPredicate& member,
                                             CosetSide side);

}  // namespace altdiff::gf2
