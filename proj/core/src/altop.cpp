#include "altdiff/altop.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "altdiff/error.hpp"

namespace altdiff::altop {

namespace {

constexpr int kMaxTableWidth = 8;
constexpr int kMaxEnumerationBits = 24;

// Column j of the defining matrix packed as b_{1,j} || b_{2,j} || ... || b_{m,j}.
std::vector<Word> theta_columns(const ThetaSpec& spec) {
  const int m = spec.strong_dim();
  const int d = spec.d();
  std::vector<Word> cols(static_cast<std::size_t>(m), 0);
  for (int j = 1; j <= m; ++j) {
    Word col = 0;
    for (int i = 1; i <= m; ++i) col = (col << d) | spec.b(i, j).word();
    cols[static_cast<std::size_t>(j - 1)] = col;
  }
  return cols;
}

void check_dimensions(int n, int d) {
  if (n < 3 || n > gf2::kMaxWidth)
    throw Error(Errc::DimensionOutOfRange, "n must lie in 3..64, got " + std::to_string(n));
  if (d < 1 || d > n - 2)
    throw Error(Errc::DimensionOutOfRange,
                "d must satisfy 1 <= d <= n-2 (n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
}

// Validity from raw pair words; pairs listed as (1,2), (1,3), ..., (m-1,m).
bool columns_independent(int m, int d, std::span<const Word> pair_bits) {
  Word cols[64] = {};
  std::size_t k = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j, ++k) {
      const Word b = pair_bits[k];
      // Entry (i, j) sits in column j at row i and in column i at row j.
      cols[j] |= b << (d * (m - 1 - i));
      cols[i] |= b << (d * (m - 1 - j));
    }
  }
  return gf2::rank_of_words(std::span<const Word>(cols, static_cast<std::size_t>(m))) == m;
}

ThetaSpec spec_from_pairs(int n, int d, std::span<const Word> pair_bits) {
  ThetaSpec spec(n, d);
  const int m = n - d;
  std::size_t k = 0;
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j, ++k)
      if (pair_bits[k] != 0) spec.set_b(i, j, BitVec(d, pair_bits[k]));
  return spec;
}

template <typename Fn>
void for_each_canonical(int n, int d, Fn&& fn) {
  check_dimensions(n, d);
  const int m = n - d;
  const int pairs = m * (m - 1) / 2;
  const int bits = pairs * d;
  if (bits > kMaxEnumerationBits || m * d > 64)
    throw Error(Errc::SizeTooLarge, "canonical enumeration for n=" + std::to_string(n) + ", d=" +
                                        std::to_string(d) + " exceeds 2^24 candidates");
  std::vector<Word> pair_bits(static_cast<std::size_t>(pairs));
  const Word mask = gf2::low_mask(d);
  for (Word t = 0; t < (Word{1} << bits); ++t) {
    for (int k = 0; k < pairs; ++k) pair_bits[static_cast<std::size_t>(k)] = (t >> (d * (pairs - 1 - k))) & mask;
    if (columns_independent(m, d, pair_bits)) fn(std::span<const Word>(pair_bits));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ThetaSpec

ThetaSpec::ThetaSpec(int n, int d) : n_(n), d_(d) {
  if (n < 1 || n > gf2::kMaxWidth || d < 0 || d > n)
    throw Error(Errc::DimensionOutOfRange, "invalid (n, d) = (" + std::to_string(n) + ", " + std::to_string(d) + ")");
}

BitVec ThetaSpec::b(int i, int j) const {
  if (i < 1 || j < 1 || i > strong_dim() || j > strong_dim())
    throw Error(Errc::InvalidSpec, "index outside the defining matrix");
  if (i == j) return BitVec::zero(d_);
  const auto it = entries_.find({std::min(i, j), std::max(i, j)});
  return it == entries_.end() ? BitVec::zero(d_) : it->second;
}

void ThetaSpec::set_b(int i, int j, const BitVec& value) {
  if (i == j) throw Error(Errc::InvalidSpec, "diagonal entries of the defining matrix are zero");
  if (i < 1 || j < 1 || i > strong_dim() || j > strong_dim())
    throw Error(Errc::InvalidSpec, "index outside the defining matrix");
  if (value.width() != d_) throw Error(Errc::WidthMismatch, "entry width must equal d");
  const std::pair<int, int> key{std::min(i, j), std::max(i, j)};
  if (value.is_zero())
    entries_.erase(key);
  else
    entries_[key] = value;
}

bool satisfies_dimension_bound(int n, int d) noexcept { return 2 - (n % 2) <= d && d <= n - 2; }

std::string ValidationReport::describe() const {
  if (valid) return "valid";
  std::ostringstream out;
  out << "invalid: columns {";
  for (std::size_t i = 0; i < violating_columns.size(); ++i) out << (i ? "," : "") << violating_columns[i];
  out << "} sum to zero";
  return out.str();
}

ValidationReport validate_theta(const ThetaSpec& spec) {
  check_dimensions(spec.n(), spec.d());
  const int m = spec.strong_dim();
  if (m * spec.d() > 64) throw Error(Errc::SizeTooLarge, "defining matrix columns exceed 64 bits");
  const auto cols = theta_columns(spec);
  const auto kernel = gf2::left_kernel(BitMatrix::from_rows(m * spec.d(), cols));
  ValidationReport report;
  report.valid = kernel.empty();
  if (!report.valid) {
    const Word combo = kernel.front();
    for (int j = 1; j <= m; ++j)
      if ((combo >> (m - j)) & 1U) report.violating_columns.push_back(j);
  }
  return report;
}

// ---------------------------------------------------------------------------
// CircTable

CircTable::CircTable(int n) : n_(n) {
  if (n < 1 || n > kMaxTableWidth) throw Error(Errc::SizeTooLarge, "lookup tables are limited to n <= 8");
  data_.assign(std::size_t{1} << (2 * n), 0);
}

CircTable CircTable::xor_table(int n) {
  return from_function(n, [](Word x, Word y) { return x ^ y; });
}

// ---------------------------------------------------------------------------
// AltOperation

AltOperation::AltOperation(ThetaSpec spec) : spec_(std::move(spec)) {}

AltOperation AltOperation::build(const ThetaSpec& spec) {
  const auto report = validate_theta(spec);
  if (!report.valid) throw Error(Errc::InvalidSpec, "defining matrix " + report.describe());

  AltOperation op(spec);
  const int n = spec.n();
  const int d = spec.d();
  const int m = spec.strong_dim();
  op.products_.assign(static_cast<std::size_t>(m * m), 0);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) op.products_[static_cast<std::size_t>((i - 1) * m + (j - 1))] = spec.b(i, j).word();

  op.e_matrices_.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    BitMatrix e(m, d);
    if (i <= m)
      for (int j = 1; j <= m; ++j) e.set_row(j - 1, spec.b(i, j).word());
    op.e_matrices_.push_back(std::move(e));
  }
  if (n <= kMaxTableWidth) op.table_ = op.make_table();
  return op;
}

const BitMatrix& AltOperation::e_matrix(int i) const {
  if (i < 1 || i > n()) throw Error(Errc::WidthMismatch, "basis index out of range");
  return e_matrices_[static_cast<std::size_t>(i - 1)];
}

BitMatrix AltOperation::e_matrix_of(const BitVec& a) const {
  if (a.width() != n()) throw Error(Errc::WidthMismatch, "vector width does not match n");
  BitMatrix e(strong_dim(), d());
  for (int i = 1; i <= strong_dim(); ++i) {
    if (!a.get(i)) continue;
    for (int r = 0; r < strong_dim(); ++r) e.set_row(r, e.row_word(r) ^ e_matrix(i).row_word(r));
  }
  return e;
}

BitMatrix AltOperation::translation_matrix(const BitVec& a) const {
  BitMatrix m = BitMatrix::identity(n());
  m.set_block(0, strong_dim(), e_matrix_of(a));
  return m;
}

BitVec AltOperation::dot(const BitVec& x, const BitVec& y) const {
  if (x.width() != n() || y.width() != n()) throw Error(Errc::WidthMismatch, "operand width does not match n");
  return BitVec(n(), dot(x.word(), y.word()));
}

BitVec AltOperation::circ(const BitVec& x, const BitVec& y) const {
  if (x.width() != n() || y.width() != n()) throw Error(Errc::WidthMismatch, "operand width does not match n");
  return BitVec(n(), circ(x.word(), y.word()));
}

std::vector<BitVec> AltOperation::weak_basis() const {
  std::vector<BitVec> basis;
  for (int i = strong_dim() + 1; i <= n(); ++i) basis.push_back(BitVec::unit(n(), i));
  return basis;
}

std::vector<BitVec> AltOperation::error_basis() const {
  std::vector<Word> words;
  for (const auto& [key, value] : spec_.entries()) words.push_back(value.word());
  std::vector<Word> basis;
  for (Word w : words) {
    for (Word b : basis) w = std::min(w, w ^ b);
    if (w == 0) continue;
    for (auto& b : basis) b = std::min(b, b ^ w);
    basis.push_back(w);
  }
  std::sort(basis.rbegin(), basis.rend());
  std::vector<BitVec> out;
  for (Word w : basis) out.emplace_back(n(), w);
  return out;
}

CircTable AltOperation::make_table() const {
  // The product depends only on the strong parts.
  const int m = strong_dim();
  const int dd = d();
  std::vector<Word> strong(std::size_t{1} << (2 * m));
  for (Word xs = 0; xs < (Word{1} << m); ++xs)
    for (Word ys = 0; ys < (Word{1} << m); ++ys) strong[(xs << m) | ys] = dot(xs << dd, ys << dd);
  return CircTable::from_function(n(), [&](Word x, Word y) { return x ^ y ^ strong[((x >> dd) << m) | (y >> dd)]; });
}

AltOperation two_strong_operation(int s, const BitVec& b) {
  ThetaSpec spec(s, s - 2);
  spec.set_b(1, 2, b);
  return AltOperation::build(spec);
}

// ---------------------------------------------------------------------------
// ParallelOperation

ParallelOperation ParallelOperation::compose(std::vector<AltOperation> blocks) {
  if (blocks.empty()) throw Error(Errc::HeterogeneousWidths, "parallel operation needs at least one block");
  const int s = blocks.front().n();
  for (const auto& b : blocks)
    if (b.n() != s) throw Error(Errc::HeterogeneousWidths, "blocks of a parallel operation must share a width");
  if (s * static_cast<int>(blocks.size()) > gf2::kMaxWidth)
    throw Error(Errc::SizeTooLarge, "parallel state exceeds 64 bits");
  ParallelOperation op;
  op.s_ = s;
  op.blocks_ = std::move(blocks);
  return op;
}

Word ParallelOperation::circ(Word x, Word y) const noexcept {
  Word out = 0;
  const int count = block_count();
  for (int j = 0; j < count; ++j) {
    const int shift = (count - 1 - j) * s_;
    const Word xb = (x >> shift) & gf2::low_mask(s_);
    const Word yb = (y >> shift) & gf2::low_mask(s_);
    const auto& blk = blocks_[static_cast<std::size_t>(j)];
    const Word r = blk.table() ? Word{(*blk.table())(static_cast<unsigned>(xb), static_cast<unsigned>(yb))}
                               : blk.circ(xb, yb);
    out |= r << shift;
  }
  return out;
}

BitVec ParallelOperation::circ(const BitVec& x, const BitVec& y) const {
  if (x.width() != n() || y.width() != n()) throw Error(Errc::WidthMismatch, "operand width does not match n");
  return BitVec(n(), circ(x.word(), y.word()));
}

BitVec ParallelOperation::dot(const BitVec& x, const BitVec& y) const {
  if (x.width() != n() || y.width() != n()) throw Error(Errc::WidthMismatch, "operand width does not match n");
  return BitVec(n(), dot(x.word(), y.word()));
}

bool ParallelOperation::is_weak(Word a) const noexcept {
  for (int j = 0; j < block_count(); ++j)
    if (!blocks_[static_cast<std::size_t>(j)].is_weak(block_value(a, j))) return false;
  return true;
}

std::vector<BitVec> ParallelOperation::weak_basis() const {
  std::vector<BitVec> basis;
  for (int j = 0; j < block_count(); ++j) {
    const int shift = (block_count() - 1 - j) * s_;
    for (const auto& w : blocks_[static_cast<std::size_t>(j)].weak_basis())
      basis.emplace_back(n(), w.word() << shift);
  }
  return basis;
}

std::vector<BitVec> ParallelOperation::error_basis() const {
  std::vector<BitVec> basis;
  for (int j = 0; j < block_count(); ++j) {
    const int shift = (block_count() - 1 - j) * s_;
    for (const auto& u : blocks_[static_cast<std::size_t>(j)].error_basis())
      basis.emplace_back(n(), u.word() << shift);
  }
  return basis;
}

// ---------------------------------------------------------------------------
// TranslationGroup

TranslationGroup TranslationGroup::from_operation(const AltOperation& op) {
  if (op.n() > kMaxTableWidth) throw Error(Errc::SizeTooLarge, "translation groups are tabulated for n <= 8");
  TranslationGroup g;
  g.n_ = op.n();
  g.matrices_.reserve(std::size_t{1} << op.n());
  for (Word a = 0; a < (Word{1} << op.n()); ++a) g.matrices_.push_back(op.translation_matrix(BitVec(op.n(), a)));
  g.origin_ = Origin{op.spec(), BitMatrix::identity(op.n())};
  return g;
}

TranslationGroup TranslationGroup::from_table(const CircTable& table) {
  const int n = table.n();
  TranslationGroup g;
  g.n_ = n;
  for (unsigned a = 0; a < table.size(); ++a) {
    BitMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
      const unsigned e = 1U << (n - 1 - i);
      m.set_row(i, Word{static_cast<unsigned>(table(e, a) ^ a)});
    }
    for (unsigned x = 0; x < table.size(); ++x)
      if ((m.apply(Word{x}) ^ a) != table(x, a))
        throw Error(Errc::InvalidSpec, "translation is not affine over +");
    g.matrices_.push_back(std::move(m));
  }
  return g;
}

CircTable TranslationGroup::operation_table() const {
  return CircTable::from_function(n_, [this](Word x, Word y) { return translate(x, y); });
}

std::vector<Word> TranslationGroup::weak_space() const {
  std::vector<Word> out;
  const auto id = BitMatrix::identity(n_);
  for (std::size_t a = 0; a < matrices_.size(); ++a)
    if (matrices_[a] == id) out.push_back(a);
  return out;
}

bool TranslationGroup::is_elementary_abelian_regular() const {
  const auto id = BitMatrix::identity(n_);
  const Word size = Word{1} << n_;
  if (matrices_.size() != size || matrices_[0] != id) return false;
  for (Word a = 0; a < size; ++a) {
    const auto& ma = matrices_[a];
    if (!gf2::is_invertible(ma) || ma * ma != id || ma.apply(a) != a) return false;
    for (Word b = a + 1; b < size; ++b) {
      const auto& mb = matrices_[b];
      const auto prod = ma * mb;
      if (prod != mb * ma) return false;
      if (prod != matrices_[translate(a, b)]) return false;
    }
  }
  return true;
}

std::vector<Word> TranslationGroup::fingerprint() const {
  std::vector<Word> out;
  out.reserve(matrices_.size());
  for (const auto& m : matrices_) {
    Word packed = 0;
    for (int r = 0; r < n_; ++r) packed = (packed << n_) | m.row_word(r);
    out.push_back(packed);
  }
  return out;
}

std::string TranslationGroup::fingerprint_hex() const {
  std::string out;
  const int digits = (n_ * n_ + 3) / 4;
  for (Word w : fingerprint()) out += BitVec(digits * 4, w).to_hex();
  return out;
}

TranslationGroup conjugate_group(const TranslationGroup& group, const BitMatrix& g) {
  if (g.rows() != group.n() || !g.is_square()) throw Error(Errc::WidthMismatch, "conjugator size");
  if (!gf2::is_invertible(g)) throw Error(Errc::SingularConjugator, "conjugator is singular");
  const auto g_inv = gf2::inverse(g);
  std::vector<BitMatrix> mats(std::size_t{1} << group.n());
  for (Word a = 0; a < mats.size(); ++a) mats[g_inv.apply(a)] = g * group.matrix(a) * g_inv;

  TranslationGroup out;
  out.n_ = group.n();
  out.matrices_ = std::move(mats);
  if (group.origin()) out.set_origin({group.origin()->spec, g * group.origin()->conjugator});
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<ThetaSpec> enumerate_canonical(int n, int d) {
  std::vector<ThetaSpec> out;
  for_each_canonical(n, d, [&](std::span<const Word> pairs) { out.push_back(spec_from_pairs(n, d, pairs)); });
  return out;
}

ThetaSpec random_valid_spec(int n, int d, std::mt19937_64& rng) {
  check_dimensions(n, d);
  const int m = n - d;
  if (m * d > 64) throw Error(Errc::SizeTooLarge, "defining matrix columns exceed 64 bits");
  const int pairs = m * (m - 1) / 2;
  std::vector<Word> pair_bits(static_cast<std::size_t>(pairs));
  for (int attempt = 0; attempt < 1'000'000; ++attempt) {
    for (auto& b : pair_bits) b = rng() & gf2::low_mask(d);
    if (columns_independent(m, d, pair_bits)) return spec_from_pairs(n, d, pair_bits);
  }
  throw Error(Errc::InvalidSpec, "no valid defining matrix found for n=" + std::to_string(n) + ", d=" + std::to_string(d));
}

std::vector<TranslationGroup> enumerate_conjugates(const AltOperation& base) {
  const auto gl = gf2::enumerate_gl(base.n());
  const auto canonical = TranslationGroup::from_operation(base);
  std::set<std::vector<Word>> seen;
  std::vector<TranslationGroup> out;
  for (const auto& g : gl) {
    auto conj = conjugate_group(canonical, g);
    if (seen.insert(conj.fingerprint()).second) out.push_back(std::move(conj));
  }
  return out;
}

ConjugacyInvariant conjugacy_invariant(const AltOperation& op) {
  return {op.n(), op.d(), op.error_dim()};
}

bool invariants_conjugate(const ConjugacyInvariant& a, const ConjugacyInvariant& b) {
  if (a.n != b.n || a.d != b.d) return false;
  if (a.d == a.n - 2) return true;
  if (a.d == a.n - 3) return a.dim_u == b.dim_u;
  throw Error(Errc::WrongRegime, "conjugacy is only characterized for d = n-2 and d = n-3");
}

}  // namespace altdiff::altop
