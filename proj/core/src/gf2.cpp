#include "altdiff/gf2.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <unordered_set>

#include "altdiff/error.hpp"

namespace altdiff::gf2 {

namespace {

void check_width(int width) {
  if (width < 0 || width > kMaxWidth)
    throw Error(Errc::WidthMismatch, "width " + std::to_string(width) + " outside 0..64");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Reduces `rows` in place to echelon form; returns the rank.
int eliminate(std::vector<Word>& rows) {
  int rank = 0;
  for (int bit = 63; bit >= 0 && rank < static_cast<int>(rows.size()); --bit) {
    const Word mask = Word{1} << bit;
    auto pivot = std::find_if(rows.begin() + rank, rows.end(),
                              [mask](Word w) { return (w & mask) != 0; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (static_cast<int>(r) != rank && (rows[r] & mask)) rows[r] ^= rows[static_cast<std::size_t>(rank)];
    ++rank;
  }
  return rank;
}

}  // namespace

// ---------------------------------------------------------------------------
// BitVec

BitVec::BitVec(int width, Word bits) : width_(width), bits_(bits) {
  check_width(width);
  if ((bits & ~low_mask(width)) != 0)
    throw Error(Errc::WidthMismatch, "bits set above width " + std::to_string(width));
}

BitVec BitVec::unit(int width, int coord) {
  check_width(width);
  if (coord < 1 || coord > width)
    throw Error(Errc::WidthMismatch, "coordinate " + std::to_string(coord) + " outside 1.." + std::to_string(width));
  return BitVec(width, Word{1} << (width - coord));
}

BitVec BitVec::parse_binary(std::string_view text) {
  text = trim(text);
  if (text.empty() || text.size() > kMaxWidth)
    throw Error(Errc::ParseError, "binary string must have 1..64 digits");
  Word bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1') throw Error(Errc::ParseError, "not a binary digit: '" + std::string(1, c) + "'");
    bits = (bits << 1) | static_cast<Word>(c == '1');
  }
  return BitVec(static_cast<int>(text.size()), bits);
}

BitVec BitVec::parse_hex(std::string_view text, int width) {
  text = trim(text);
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) text.remove_prefix(2);
  if (text.empty() || text.size() > 16) throw Error(Errc::ParseError, "hex string must have 1..16 digits");
  Word bits = 0;
  for (char c : text) {
    const int v = hex_value(c);
    if (v < 0) throw Error(Errc::ParseError, "not a hex digit: '" + std::string(1, c) + "'");
    bits = (bits << 4) | static_cast<Word>(v);
  }
  if (width < 0) width = static_cast<int>(text.size()) * 4;
  return BitVec(width, bits);
}

bool BitVec::get(int coord) const {
  if (coord < 1 || coord > width_) throw Error(Errc::WidthMismatch, "coordinate out of range");
  return (bits_ >> (width_ - coord)) & 1U;
}

BitVec BitVec::with(int coord, bool value) const {
  const Word mask = unit(width_, coord).word();
  return BitVec(width_, value ? (bits_ | mask) : (bits_ & ~mask));
}

int BitVec::weight() const noexcept { return std::popcount(bits_); }

std::string BitVec::to_binary() const {
  std::string out(static_cast<std::size_t>(width_), '0');
  for (int i = 0; i < width_; ++i)
    if ((bits_ >> (width_ - 1 - i)) & 1U) out[static_cast<std::size_t>(i)] = '1';
  return out;
}

std::string BitVec::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const int digits = std::max(1, (width_ + 3) / 4);
  std::string out(static_cast<std::size_t>(digits), '0');
  for (int i = 0; i < digits; ++i)
    out[static_cast<std::size_t>(digits - 1 - i)] = kDigits[(bits_ >> (4 * i)) & 0xF];
  return out;
}

BitVec operator+(const BitVec& a, const BitVec& b) {
  if (a.width_ != b.width_) throw Error(Errc::WidthMismatch, "adding vectors of different widths");
  return BitVec(a.width_, a.bits_ ^ b.bits_);
}

// ---------------------------------------------------------------------------
// BitMatrix

BitMatrix::BitMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  check_width(rows);
  check_width(cols);
  data_.assign(static_cast<std::size_t>(rows), 0);
}

BitMatrix BitMatrix::identity(int n) {
  BitMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.data_[static_cast<std::size_t>(i)] = Word{1} << (n - 1 - i);
  return m;
}

BitMatrix BitMatrix::from_rows(int cols, std::span<const Word> rows) {
  BitMatrix m(static_cast<int>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(static_cast<int>(i), rows[i]);
  return m;
}

BitMatrix BitMatrix::from_rows(std::span<const BitVec> rows) {
  if (rows.empty()) return BitMatrix();
  BitMatrix m(static_cast<int>(rows.size()), rows.front().width());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].width() != m.cols_) throw Error(Errc::WidthMismatch, "ragged matrix rows");
    m.data_[i] = rows[i].word();
  }
  return m;
}

BitMatrix BitMatrix::parse(std::string_view text) {
  std::vector<BitVec> rows;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = trim(text.substr(0, nl));
    if (!line.empty()) rows.push_back(BitVec::parse_binary(line));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  if (rows.empty()) throw Error(Errc::ParseError, "empty matrix");
  return from_rows(rows);
}

BitMatrix BitMatrix::from_strings(std::initializer_list<std::string_view> rows) {
  std::vector<BitVec> parsed;
  for (auto r : rows) parsed.push_back(BitVec::parse_binary(r));
  return from_rows(parsed);
}

bool BitMatrix::at(int r, int c) const {
  return (data_.at(static_cast<std::size_t>(r)) >> (cols_ - 1 - c)) & 1U;
}

void BitMatrix::set(int r, int c, bool value) {
  if (c < 0 || c >= cols_) throw Error(Errc::WidthMismatch, "column out of range");
  const Word mask = Word{1} << (cols_ - 1 - c);
  Word& w = data_.at(static_cast<std::size_t>(r));
  w = value ? (w | mask) : (w & ~mask);
}

void BitMatrix::set_row(int r, Word bits) {
  if ((bits & ~low_mask(cols_)) != 0) throw Error(Errc::WidthMismatch, "row wider than matrix");
  data_.at(static_cast<std::size_t>(r)) = bits;
}

BitMatrix BitMatrix::block(int r0, int c0, int nr, int nc) const {
  BitMatrix out(nr, nc);
  const int shift = cols_ - c0 - nc;
  for (int i = 0; i < nr; ++i)
    out.data_[static_cast<std::size_t>(i)] = (row_word(r0 + i) >> shift) & low_mask(nc);
  return out;
}

void BitMatrix::set_block(int r0, int c0, const BitMatrix& blk) {
  const int shift = cols_ - c0 - blk.cols_;
  const Word mask = low_mask(blk.cols_) << shift;
  for (int i = 0; i < blk.rows_; ++i) {
    Word& w = data_.at(static_cast<std::size_t>(r0 + i));
    w = (w & ~mask) | (blk.row_word(i) << shift);
  }
}

BitVec BitMatrix::apply(const BitVec& x) const {
  if (x.width() != rows_) throw Error(Errc::WidthMismatch, "vector width does not match matrix rows");
  return BitVec(cols_, apply(x.word()));
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (at(r, c)) t.set(c, r, true);
  return t;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(Errc::WidthMismatch, "matrix product dimension mismatch");
  BitMatrix out(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) out.data_[static_cast<std::size_t>(i)] = b.apply(a.row_word(i));
  return out;
}

std::string BitMatrix::to_string() const {
  std::string out;
  for (int r = 0; r < rows_; ++r) {
    out += row(r).to_binary();
    out += '\n';
  }
  return out;
}

std::size_t BitMatrix::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ (static_cast<std::uint64_t>(rows_) << 8) ^ static_cast<std::uint64_t>(cols_);
  for (Word w : data_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// Algorithms

int rank_of_words(std::span<const Word> rows) {
  std::vector<Word> work(rows.begin(), rows.end());
  return eliminate(work);
}

int rank(const BitMatrix& m) { return rank_of_words(m.row_words()); }

bool is_invertible(const BitMatrix& m) { return m.is_square() && rank(m) == m.rows(); }

BitMatrix inverse(const BitMatrix& m) {
  if (!m.is_square()) throw Error(Errc::WidthMismatch, "inverse of a non-square matrix");
  const int n = m.rows();
  std::vector<Word> left(m.row_words().begin(), m.row_words().end());
  const auto id = BitMatrix::identity(n);
  std::vector<Word> right(id.row_words().begin(), id.row_words().end());
  for (int col = 0; col < n; ++col) {
    const Word mask = Word{1} << (n - 1 - col);
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (left[static_cast<std::size_t>(r)] & mask) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw Error(Errc::SingularMatrix, "matrix has rank below " + std::to_string(n));
    std::swap(left[static_cast<std::size_t>(col)], left[static_cast<std::size_t>(pivot)]);
    std::swap(right[static_cast<std::size_t>(col)], right[static_cast<std::size_t>(pivot)]);
    for (int r = 0; r < n; ++r) {
      if (r != col && (left[static_cast<std::size_t>(r)] & mask)) {
        left[static_cast<std::size_t>(r)] ^= left[static_cast<std::size_t>(col)];
        right[static_cast<std::size_t>(r)] ^= right[static_cast<std::size_t>(col)];
      }
    }
  }
  return BitMatrix::from_rows(n, right);
}

std::vector<Word> left_kernel(const BitMatrix& m) {
  // Track which original rows make up each reduced row.
  const int n = m.rows();
  std::vector<Word> rows(m.row_words().begin(), m.row_words().end());
  std::vector<Word> combo(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) combo[static_cast<std::size_t>(i)] = Word{1} << (n - 1 - i);
  int rank = 0;
  for (int bit = m.cols() - 1; bit >= 0 && rank < n; --bit) {
    const Word mask = Word{1} << bit;
    int pivot = -1;
    for (int r = rank; r < n; ++r)
      if (rows[static_cast<std::size_t>(r)] & mask) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
    std::swap(combo[static_cast<std::size_t>(rank)], combo[static_cast<std::size_t>(pivot)]);
    for (int r = 0; r < n; ++r)
      if (r != rank && (rows[static_cast<std::size_t>(r)] & mask)) {
        rows[static_cast<std::size_t>(r)] ^= rows[static_cast<std::size_t>(rank)];
        combo[static_cast<std::size_t>(r)] ^= combo[static_cast<std::size_t>(rank)];
      }
    ++rank;
  }
  return {combo.begin() + rank, combo.end()};
}

std::optional<BitVec> solve(const BitMatrix& m, const BitVec& b) {
  if (b.width() != m.cols()) throw Error(Errc::WidthMismatch, "right-hand side width");
  // Append b as an extra row; a kernel vector using it yields a solution.
  std::vector<Word> rows(m.row_words().begin(), m.row_words().end());
  rows.push_back(b.word());
  const auto kernel = left_kernel(BitMatrix::from_rows(m.cols(), rows));
  for (Word k : kernel) {
    if (k & 1U) return BitVec(m.rows(), k >> 1);
  }
  return std::nullopt;
}

std::uint64_t gl_order(int s) {
  std::uint64_t order = 1;
  for (int i = 0; i < s; ++i) order *= (std::uint64_t{1} << s) - (std::uint64_t{1} << i);
  return order;
}

std::vector<BitMatrix> enumerate_gl(int s) {
  if (s < 1) throw Error(Errc::DimensionOutOfRange, "enumerate_gl needs s >= 1");
  if (s > 4) throw Error(Errc::SizeTooLarge, "enumerate_gl is limited to s <= 4");
  const Word size = Word{1} << s;
  std::vector<BitMatrix> out;
  out.reserve(gl_order(s));
  std::vector<Word> rows(static_cast<std::size_t>(s));
  // span[k] lists the vectors spanned by the first k rows.
  std::vector<std::vector<bool>> span(static_cast<std::size_t>(s) + 1, std::vector<bool>(size, false));
  span[0][0] = true;
  auto recurse = [&](auto&& self, int k) -> void {
    if (k == s) {
      out.push_back(BitMatrix::from_rows(s, rows));
      return;
    }
    for (Word v = 1; v < size; ++v) {
      if (span[static_cast<std::size_t>(k)][v]) continue;
      rows[static_cast<std::size_t>(k)] = v;
      auto& next = span[static_cast<std::size_t>(k) + 1];
      next = span[static_cast<std::size_t>(k)];
      for (Word u = 0; u < size; ++u)
        if (span[static_cast<std::size_t>(k)][u]) next[u ^ v] = true;
      self(self, k + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

BitMatrix random_invertible(int n, std::mt19937_64& rng) {
  const Word mask = low_mask(n);
  std::vector<Word> rows(static_cast<std::size_t>(n));
  while (true) {
    for (auto& r : rows) r = rng() & mask;
    if (rank_of_words(rows) == n) return BitMatrix::from_rows(n, rows);
  }
}

std::vector<BitMatrix> coset_representatives(std::span<const BitMatrix> group,
                                             const MatrixPredicate& member,
                                             CosetSide side) {
  std::vector<BitMatrix> subgroup;
  for (const auto& g : group)
    if (member(g)) subgroup.push_back(g);
  if (subgroup.empty()) throw Error(Errc::NotASubgroup, "predicate selects no element");

  // Closure sanity checks on a small sample.
  const std::size_t probe = std::min<std::size_t>(subgroup.size(), 16);
  for (std::size_t i = 0; i < probe; ++i) {
    const auto& a = subgroup[i];
    if (!member(BitMatrix::identity(a.rows())))
      throw Error(Errc::NotASubgroup, "identity is not a member");
    const auto& b = subgroup[(i * 7 + 3) % subgroup.size()];
    if (!member(a * b)) throw Error(Errc::NotASubgroup, "product of members is not a member");
    if (is_invertible(a) && !member(inverse(a))) throw Error(Errc::NotASubgroup, "inverse of a member is not a member");
  }

  std::unordered_set<BitMatrix, BitMatrixHash> covered;
  std::unordered_set<BitMatrix, BitMatrixHash> universe(group.begin(), group.end());
  std::vector<BitMatrix> reps;
  for (const auto& g : group) {
    if (covered.contains(g)) continue;
    reps.push_back(g);
    for (const auto& h : subgroup) {
      auto element = side == CosetSide::Left ? g * h : h * g;
      if (!universe.contains(element)) throw Error(Errc::NotASubgroup, "coset leaves the group");
      if (!covered.insert(std::move(element)).second)
        throw Error(Errc::NotASubgroup, "cosets overlap");
    }
  }
  if (reps.size() * subgroup.size() != group.size())
    throw Error(Errc::NotASubgroup, "cosets do not tile the group");
  return reps;
}

}  // namespace altdiff::gf2
