#include "altdiff/ddt.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

#include "altdiff/error.hpp"

namespace altdiff::ddt {

namespace {

constexpr int kMaxSboxWidth = 8;

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (u >= 'A' && u <= 'F') return u - 'A' + 10;
  throw Error(Errc::ParseError, std::string("not a hex digit: '") + c + "'");
}

void require_width(const Sbox& f, int n) {
  if (f.s() != n)
    throw Error(Errc::WidthMismatch,
                "s-box width " + std::to_string(f.s()) + " does not match operation width " + std::to_string(n));
}

}  // namespace

Sbox Sbox::from_table(int s, std::vector<std::uint8_t> table) {
  if (s < 1 || s > kMaxSboxWidth) throw Error(Errc::DimensionOutOfRange, "s-box width must lie in 1..8");
  if (table.size() != (std::size_t{1} << s)) throw Error(Errc::WidthMismatch, "s-box table must have 2^s entries");
  std::vector<bool> seen(table.size(), false);
  for (const auto v : table) {
    if (v >= table.size() || seen[v]) throw Error(Errc::NotBijective, "s-box is not a permutation");
    seen[v] = true;
  }
  Sbox f;
  f.s_ = s;
  f.table_ = std::move(table);
  return f;
}

Sbox Sbox::parse_hex(std::string_view text, int s) {
  std::string digits;
  for (const char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') continue;
    digits.push_back(c);
  }
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) digits.erase(0, 2);
  if (s < 0) {
    for (int w = 1; w <= kMaxSboxWidth && s < 0; ++w) {
      const std::size_t per = w <= 4 ? 1 : 2;
      if (digits.size() == per << w) s = w;
    }
    if (s < 0) throw Error(Errc::ParseError, "cannot infer s-box width from " + std::to_string(digits.size()) + " digits");
  }
  const std::size_t per = s <= 4 ? 1 : 2;
  if (digits.size() != per << s)
    throw Error(Errc::ParseError, "expected " + std::to_string(per << s) + " hex digits for width " + std::to_string(s));
  std::vector<std::uint8_t> table;
  for (std::size_t i = 0; i < digits.size(); i += per) {
    int v = hex_digit(digits[i]);
    if (per == 2) v = v * 16 + hex_digit(digits[i + 1]);
    table.push_back(static_cast<std::uint8_t>(v));
  }
  return from_table(s, std::move(table));
}

Sbox Sbox::identity(int s) {
  std::vector<std::uint8_t> t(std::size_t{1} << s);
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = static_cast<std::uint8_t>(x);
  return from_table(s, std::move(t));
}

Sbox Sbox::affine(const BitMatrix& m, std::uint8_t c) {
  if (!m.is_square()) throw Error(Errc::WidthMismatch, "affine map needs a square matrix");
  std::vector<std::uint8_t> t(std::size_t{1} << m.rows());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = static_cast<std::uint8_t>(m.apply(x) ^ c);
  return from_table(m.rows(), std::move(t));
}

Sbox Sbox::inverse() const {
  std::vector<std::uint8_t> t(table_.size());
  for (std::size_t x = 0; x < t.size(); ++x) t[table_[x]] = static_cast<std::uint8_t>(x);
  return from_table(s_, std::move(t));
}

std::string Sbox::to_hex() const {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string out;
  for (const auto v : table_) {
    if (s_ > 4) out.push_back(kDigits[v >> 4]);
    out.push_back(kDigits[v & 15]);
  }
  return out;
}

Sbox then(const Sbox& first, const Sbox& second) {
  if (first.s() != second.s()) throw Error(Errc::WidthMismatch, "composed s-boxes must share a width");
  std::vector<std::uint8_t> t(first.size());
  for (unsigned x = 0; x < first.size(); ++x) t[x] = second(first(x));
  return Sbox::from_table(first.s(), std::move(t));
}

DDTable::DDTable(int s, std::string flavor)
    : s_(s), flavor_(std::move(flavor)), counts_(std::size_t{1} << (2 * s), 0) {}

int DDTable::row_max(unsigned a) const noexcept {
  int best = 0;
  for (unsigned b = 0; b < size(); ++b) best = std::max<int>(best, at(a, b));
  return best;
}

int DDTable::uniformity() const noexcept {
  int best = 0;
  for (unsigned a = 1; a < size(); ++a) best = std::max(best, row_max(a));
  return best;
}

std::string DDTable::render_grid() const {
  const int w = s_ <= 4 ? 2 : 3;
  std::ostringstream out;
  for (unsigned a = 0; a < size(); ++a) {
    for (unsigned b = 0; b < size(); ++b) {
      const std::string v = std::to_string(at(a, b));
      if (b) out << ' ';
      out << std::string(static_cast<std::size_t>(std::max(0, w - static_cast<int>(v.size()))), ' ') << v;
    }
    out << '\n';
  }
  return out.str();
}

std::string DDTable::to_csv() const {
  std::ostringstream out;
  out << "a,b,count\n";
  for (unsigned a = 0; a < size(); ++a)
    for (unsigned b = 0; b < size(); ++b) out << a << ',' << b << ',' << at(a, b) << '\n';
  return out.str();
}

DDTable ddt_plus(const Sbox& f) {
  DDTable t(f.s(), "plus");
  for (unsigned a = 0; a < f.size(); ++a)
    for (unsigned x = 0; x < f.size(); ++x) ++t.at(a, f(x) ^ f(x ^ a));
  return t;
}

DDTable ddt_circ(const Sbox& f, const CircTable& op) {
  require_width(f, op.n());
  DDTable t(f.s(), "circ");
  for (unsigned a = 0; a < f.size(); ++a)
    for (unsigned x = 0; x < f.size(); ++x) ++t.at(a, op(f(x), f(op(x, a))));
  return t;
}

DDTable ddt_circ(const Sbox& f, const AltOperation& op) {
  if (const auto* table = op.table()) return ddt_circ(f, *table);
  throw Error(Errc::SizeTooLarge, "operation is not tabulated");
}

int uniformity_plus(const Sbox& f) { return ddt_plus(f).uniformity(); }

int uniformity_circ(const Sbox& f, const CircTable& op) {
  require_width(f, op.n());
  const unsigned size = f.size();
  const auto& tab = f.table();
  std::array<std::uint16_t, 256> fx{};
  for (unsigned x = 0; x < size; ++x) fx[x] = tab[x];
  std::array<std::uint16_t, 256> row{};
  int best = 0;
  for (unsigned a = 1; a < size; ++a) {
    std::fill_n(row.begin(), size, std::uint16_t{0});
    for (unsigned x = 0; x < size; ++x) {
      const unsigned y = op(x, a);
      // x and x ∘ a land in the same cell; count each pair once.
      if (y < x) continue;
      row[op(fx[x], fx[y])] += 2;
    }
    for (unsigned b = 0; b < size; ++b) best = std::max<int>(best, row[b]);
  }
  return best;
}

KeyTransition key_transition_matrix(const CircTable& op) {
  const unsigned size = op.size();
  std::vector<std::uint32_t> counts(std::size_t{size} * size, 0);
  for (unsigned a = 0; a < size; ++a)
    for (unsigned x = 0; x < size; ++x) {
      const unsigned xa = op(x, a);
      for (unsigned k = 0; k < size; ++k) ++counts[(std::size_t{a} << op.n()) | op(x ^ k, xa ^ k)];
    }
  return KeyTransition(op.n(), std::move(counts));
}

KeyTransition key_transition_matrix(const AltOperation& op) {
  if (const auto* table = op.table()) return key_transition_matrix(*table);
  throw Error(Errc::SizeTooLarge, "operation is not tabulated");
}

bool is_circ_affine(const Sbox& g, const CircTable& op) {
  require_width(g, op.n());
  const unsigned g0 = g(0);
  for (unsigned x = 0; x < g.size(); ++x)
    for (unsigned y = 0; y < g.size(); ++y)
      if (g(op(x, y)) != op(op(g(x), g(y)), g0)) return false;
  return true;
}

Sbox circ_linear_part(const Sbox& g, const CircTable& op) {
  require_width(g, op.n());
  std::vector<std::uint8_t> t(g.size());
  for (unsigned x = 0; x < g.size(); ++x) t[x] = op(g(x), g(0));
  return Sbox::from_table(g.s(), std::move(t));
}

bool check_affine_invariance(const Sbox& f, const CircTable& op, const Sbox& g1, const Sbox& g2) {
  if (!is_circ_affine(g1, op)) throw Error(Errc::NotCircAffine, "g1 is not affine for the operation");
  if (!is_circ_affine(g2, op)) throw Error(Errc::NotCircAffine, "g2 is not affine for the operation");
  const Sbox h = then(then(g2, f), g1);
  const Sbox l1_inv = circ_linear_part(g1, op).inverse();
  const Sbox l2 = circ_linear_part(g2, op);
  const DDTable dh = ddt_circ(h, op);
  const DDTable df = ddt_circ(f, op);
  for (unsigned a = 0; a < f.size(); ++a)
    for (unsigned b = 0; b < f.size(); ++b)
      if (dh.at(a, b) != df.at(l2(a), l1_inv(b))) return false;
  return true;
}

Isomorphism circ_isomorphism(const CircTable& op) {
  const int n = op.n();
  std::vector<std::uint8_t> to_circ(op.size());
  for (unsigned c = 0; c < op.size(); ++c) {
    unsigned v = 0;
    for (int i = 0; i < n; ++i)
      if ((c >> (n - 1 - i)) & 1U) v = op(v, 1U << (n - 1 - i));
    to_circ[c] = static_cast<std::uint8_t>(v);
  }
  Sbox psi = Sbox::from_table(n, std::move(to_circ));
  Sbox phi = psi.inverse();
  return {std::move(phi), std::move(psi)};
}

Sbox transport(const Sbox& f, const Isomorphism& iso) { return then(then(iso.to_plus, f), iso.to_circ); }

}  // namespace altdiff::ddt
