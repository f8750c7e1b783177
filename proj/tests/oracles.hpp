#pragma once

// Reference implementations written straight from the definitions, with no
// bit packing tricks and no calls into the library algorithms they check.

#include <cstdint>
#include <vector>

#include "altdiff/altop.hpp"
#include "altdiff/gf2.hpp"

namespace oracle {

using Mat = std::vector<std::vector<int>>;
using Vec = std::vector<int>;

inline Mat to_mat(const altdiff::gf2::BitMatrix& m) {
  Mat out(static_cast<std::size_t>(m.rows()), Vec(static_cast<std::size_t>(m.cols())));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out[r][c] = m.at(r, c) ? 1 : 0;
  return out;
}

inline altdiff::gf2::BitMatrix from_mat(const Mat& m) {
  altdiff::gf2::BitMatrix out(static_cast<int>(m.size()), m.empty() ? 0 : static_cast<int>(m[0].size()));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m[r].size(); ++c) out.set(static_cast<int>(r), static_cast<int>(c), m[r][c] != 0);
  return out;
}

inline Mat mul(const Mat& a, const Mat& b) {
  Mat out(a.size(), Vec(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b[0].size(); ++j) {
      int acc = 0;
      for (std::size_t k = 0; k < b.size(); ++k) acc ^= a[i][k] & b[k][j];
      out[i][j] = acc;
    }
  return out;
}

inline int rank(Mat m) {
  int r = 0;
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && !m[p][c]) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (int i = 0; i < rows; ++i)
      if (i != r && m[i][c])
        for (int k = 0; k < cols; ++k) m[i][k] ^= m[r][k];
    ++r;
  }
  return r;
}

/// x as a 0/1 list, x_1 first.
inline Vec bits(std::uint64_t x, int width) {
  Vec v(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) v[i] = static_cast<int>((x >> (width - 1 - i)) & 1U);
  return v;
}

inline std::uint64_t word(const Vec& v) {
  std::uint64_t x = 0;
  for (const int b : v) x = (x << 1) | static_cast<std::uint64_t>(b & 1);
  return x;
}

/// x M for a row vector x.
inline std::uint64_t apply(const Mat& m, std::uint64_t x) {
  const Vec xv = bits(x, static_cast<int>(m.size()));
  Vec out(m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    if (xv[i])
      for (std::size_t j = 0; j < out.size(); ++j) out[j] ^= m[i][j];
  return word(out);
}

/// x ∘ a = x M_a + a with M_a = [[I, E_a], [0, I]] and row j of E_{e_i}
/// equal to b_{i,j}, evaluated coordinate by coordinate.
inline std::uint64_t circ(const altdiff::altop::ThetaSpec& spec, std::uint64_t x, std::uint64_t a) {
  const int n = spec.n();
  const int d = spec.d();
  const int m = n - d;
  const Vec xv = bits(x, n);
  const Vec av = bits(a, n);
  Vec out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[k] = xv[k] ^ av[k];
  for (int i = 1; i <= m; ++i) {
    if (!av[i - 1]) continue;
    for (int j = 1; j <= m; ++j) {
      if (!xv[j - 1] || i == j) continue;
      const auto b = spec.b(std::min(i, j), std::max(i, j));
      for (int t = 0; t < d; ++t)
        if (b.get(t + 1)) out[m + t] ^= 1;
    }
  }
  return word(out);
}

inline std::uint64_t dot(const altdiff::altop::ThetaSpec& spec, std::uint64_t x, std::uint64_t y) {
  return circ(spec, x, y) ^ x ^ y;
}

/// λ linear invertible and (x ∘ y)λ = xλ ∘ yλ for every pair.
template <typename Circ>
bool is_automorphism_full(const Mat& lambda, int n, Circ&& op) {
  if (rank(lambda) != n) return false;
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < size; ++x)
    for (std::uint64_t y = 0; y < size; ++y)
      if (oracle::apply(lambda, op(x, y)) != op(oracle::apply(lambda, x), oracle::apply(lambda, y))) return false;
  return true;
}

/// Same test on basis pairs only; sound because x·y is bilinear.
template <typename Dot>
bool is_automorphism_basis(const Mat& lambda, int n, Dot&& dotp) {
  if (rank(lambda) != n) return false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const std::uint64_t ei = std::uint64_t{1} << (n - 1 - i);
      const std::uint64_t ej = std::uint64_t{1} << (n - 1 - j);
      if (oracle::apply(lambda, dotp(ei, ej)) != dotp(oracle::apply(lambda, ei), oracle::apply(lambda, ej))) return false;
    }
  return true;
}

/// counts[a][b] = #{x : f(x) ⋄ f(x ⋄ a) = b} for the operation `op`.
template <typename Op>
std::vector<std::vector<int>> ddt(const std::vector<std::uint8_t>& f, Op&& op) {
  const std::size_t size = f.size();
  std::vector<std::vector<int>> t(size, std::vector<int>(size));
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t x = 0; x < size; ++x) ++t[a][op(f[x], f[op(x, a)])];
  return t;
}

inline int uniformity(const std::vector<std::vector<int>>& t) {
  int best = 0;
  for (std::size_t a = 1; a < t.size(); ++a)
    for (const int c : t[a]) best = std::max(best, c);
  return best;
}

}  // namespace oracle
