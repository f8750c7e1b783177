#pragma once

// Difference distribution tables over + and over an alternative operation.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "altdiff/altop.hpp"
#include "altdiff/gf2.hpp"

namespace altdiff::ddt {

using altop::AltOperation;
using altop::CircTable;
using gf2::BitMatrix;

/// A permutation of [0, 2^s), s <= 8.
class Sbox {
 public:
  Sbox() = default;

  /// Throws NotBijective.
  static Sbox from_table(int s, std::vector<std::uint8_t> table);
  /// 2^s hex digits for s <= 4, two digits per entry for larger widths; the
  /// width is inferred from the length unless given. Throws ParseError.
  static Sbox parse_hex(std::string_view text, int s = -1);
  static Sbox identity(int s);
  /// x -> xM + c.
  static Sbox affine(const BitMatrix& m, std::uint8_t c = 0);

  int s() const noexcept { return s_; }
  unsigned size() const noexcept { return 1U << s_; }
  std::uint8_t operator()(unsigned x) const noexcept { return table_[x]; }
  const std::vector<std::uint8_t>& table() const noexcept { return table_; }

  Sbox inverse() const;
  /// Uppercase hex, one digit per entry when s <= 4.
  std::string to_hex() const;

  friend bool operator==(const Sbox&, const Sbox&) = default;

 private:
  int s_ = 0;
  std::vector<std::uint8_t> table_;
};

/// Postfix composition: x -> second(first(x)).
Sbox then(const Sbox& first, const Sbox& second);

class DDTable {
 public:
  DDTable(int s, std::string flavor);

  int s() const noexcept { return s_; }
  unsigned size() const noexcept { return 1U << s_; }
  const std::string& flavor() const noexcept { return flavor_; }

  std::uint16_t at(unsigned a, unsigned b) const noexcept { return counts_[(a << s_) | b]; }
  std::uint16_t& at(unsigned a, unsigned b) noexcept { return counts_[(a << s_) | b]; }

  /// Max over a != 0.
  int uniformity() const noexcept;
  int row_max(unsigned a) const noexcept;

  /// Space-separated grid, one row per input difference.
  std::string render_grid() const;
  /// Header "a,b,count", one line per cell.
  std::string to_csv() const;

  friend bool operator==(const DDTable&, const DDTable&) = default;

 private:
  int s_;
  std::string flavor_;
  std::vector<std::uint16_t> counts_;
};

/// counts[a][b] = #{x : f(x) + f(x + a) = b}.
DDTable ddt_plus(const Sbox& f);
/// counts[a][b] = #{x : f(x) ∘ f(x ∘ a) = b}. Throws WidthMismatch.
DDTable ddt_circ(const Sbox& f, const CircTable& op);
DDTable ddt_circ(const Sbox& f, const AltOperation& op);

int uniformity_plus(const Sbox& f);
/// Same value as ddt_circ(f, op).uniformity() without storing the table.
int uniformity_circ(const Sbox& f, const CircTable& op);

/// entry(a, b) = #{(x, k) : (x + k) ∘ ((x ∘ a) + k) = b} / 2^{2s}.
class KeyTransition {
 public:
  KeyTransition(int s, std::vector<std::uint32_t> counts) : s_(s), counts_(std::move(counts)) {}

  int s() const noexcept { return s_; }
  unsigned size() const noexcept { return 1U << s_; }
  std::uint32_t count(unsigned a, unsigned b) const noexcept { return counts_[(a << s_) | b]; }
  double probability(unsigned a, unsigned b) const noexcept {
    return static_cast<double>(count(a, b)) / static_cast<double>(std::uint64_t{1} << (2 * s_));
  }

 private:
  int s_;
  std::vector<std::uint32_t> counts_;
};

KeyTransition key_transition_matrix(const CircTable& op);
KeyTransition key_transition_matrix(const AltOperation& op);

/// g(x ∘ y) = g(x) ∘ g(y) ∘ g(0) for all x, y.
bool is_circ_affine(const Sbox& g, const CircTable& op);
/// x -> g(x) ∘ g(0), the ∘-linear part of a ∘-affine map.
Sbox circ_linear_part(const Sbox& g, const CircTable& op);

/// For h(x) = g1(f(g2(x))) checks δ_h(a, b) = δ_f(L2(a), L1^{-1}(b)) for all
/// (a, b), where L1, L2 are the ∘-linear parts of g1, g2. Throws NotCircAffine.
bool check_affine_invariance(const Sbox& f, const CircTable& op, const Sbox& g1, const Sbox& g2);

/// Coordinates with respect to the ∘-basis e_1, ..., e_n: to_plus maps
/// (V, ∘) onto (V, +) and to_circ is its inverse.
struct Isomorphism {
  Sbox to_plus;
  Sbox to_circ;
};

Isomorphism circ_isomorphism(const CircTable& op);

/// x -> to_circ(f(to_plus(x))); its ∘-table is the +-table of f relabelled
/// through to_plus.
Sbox transport(const Sbox& f, const Isomorphism& iso);

}  // namespace altdiff::ddt
