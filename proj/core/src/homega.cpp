#include "altdiff/homega.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "altdiff/error.hpp"

namespace altdiff::homega {

namespace {

constexpr int kMaxEnumerationWidth = 6;
constexpr int kMaxExhaustiveBits = 24;
constexpr int kRejectionCap = 10000;

template <typename DotFn>
bool member_impl(int n, DotFn&& dot, const BitMatrix& lambda) {
  if (lambda.rows() != n || lambda.cols() != n)
    throw Error(Errc::WidthMismatch, "matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  if (!gf2::is_invertible(lambda)) return false;
  for (int i = 0; i < n; ++i) {
    const Word ei = Word{1} << (n - 1 - i);
    const Word li = lambda.row_word(i);
    for (int j = i + 1; j < n; ++j) {
      const Word ej = Word{1} << (n - 1 - j);
      if (lambda.apply(dot(ei, ej)) != dot(li, lambda.row_word(j))) return false;
    }
  }
  return true;
}

// The single defining vector shared by every block of a d = s - 2 parallel op.
BitVec shared_vector(const ParallelOperation& op) {
  const int s = op.s();
  if (s < 3 || op.block(0).d() != s - 2)
    throw Error(Errc::WrongRegime, "parallel H sampling needs d = s - 2 blocks");
  const BitVec b = op.block(0).spec().b(1, 2);
  for (int j = 1; j < op.block_count(); ++j)
    if (op.block(j).d() != s - 2 || op.block(j).spec().b(1, 2) != b)
      throw Error(Errc::WrongRegime, "all blocks must share the same defining vector");
  return b;
}

// Basis completion: the given independent rows followed by unit vectors.
BitMatrix complete_basis(int width, const std::vector<Word>& rows) {
  std::vector<Word> out = rows;
  for (int c = 0; c < width && static_cast<int>(out.size()) < width; ++c) {
    out.push_back(Word{1} << (width - 1 - c));
    if (gf2::rank_of_words(out) != static_cast<int>(out.size())) out.pop_back();
  }
  return BitMatrix::from_rows(width, out);
}

// Global weak-coordinate vector carrying b in block i.
Word b_in_block(const BitVec& b, int block, int blocks) {
  const int d = b.width();
  return b.word() << (d * (blocks - 1 - block));
}

BitMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  BitMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) m.set_row(r, rng() & gf2::low_mask(cols));
  return m;
}

// Global D (weak coordinates of all blocks) -> per-block (i, j) pieces.
std::vector<BitMatrix> split_d(const BitMatrix& global, int blocks, int d) {
  std::vector<BitMatrix> out;
  for (int i = 0; i < blocks; ++i)
    for (int j = 0; j < blocks; ++j) out.push_back(global.block(i * d, j * d, d, d));
  return out;
}

BitMatrix assemble_parallel(int s, const Decomposition& dec) {
  const int blocks = static_cast<int>(dec.perm.size());
  BitMatrix lam(s * blocks, s * blocks);
  for (int i = 0; i < blocks; ++i) {
    lam.set_block(i * s, dec.perm[static_cast<std::size_t>(i)] * s, dec.a_blocks[static_cast<std::size_t>(i)]);
    for (int j = 0; j < blocks; ++j) {
      const auto k = static_cast<std::size_t>(i * blocks + j);
      lam.set_block(i * s, j * s + 2, dec.b_blocks[k]);
      lam.set_block(i * s + 2, j * s + 2, dec.d_blocks[k]);
    }
  }
  return lam;
}

// Packs the images b_ij D (or the right-hand sides) over i < j.
Word pack_pairs(const std::vector<Word>& values, int d) {
  Word key = 0;
  for (const Word v : values) key = (key << d) | v;
  return key;
}

std::vector<Word> rhs_for(const BitMatrix& a, const std::vector<Word>& b_pairs, int m) {
  std::vector<Word> out;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Word acc = 0;
      std::size_t k = 0;
      for (int k1 = 0; k1 < m; ++k1)
        for (int k2 = k1 + 1; k2 < m; ++k2, ++k) {
          const bool coef = (a.at(i, k1) && a.at(j, k2)) != (a.at(i, k2) && a.at(j, k1));
          if (coef) acc ^= b_pairs[k];
        }
      out.push_back(acc);
    }
  return out;
}

std::vector<Word> images_for(const BitMatrix& dm, const std::vector<Word>& b_pairs) {
  std::vector<Word> out;
  out.reserve(b_pairs.size());
  for (const Word b : b_pairs) out.push_back(dm.apply(b));
  return out;
}

}  // namespace

bool is_member(const AltOperation& op, const BitMatrix& lambda) {
  return member_impl(op.n(), [&](Word x, Word y) { return op.dot(x, y); }, lambda);
}

bool is_member(const ParallelOperation& op, const BitMatrix& lambda) {
  return member_impl(op.n(), [&](Word x, Word y) { return op.dot(x, y); }, lambda);
}

bool is_member(const altop::CircTable& table, const BitMatrix& lambda) {
  return member_impl(
      table.n(),
      [&](Word x, Word y) { return Word{table.dot(static_cast<unsigned>(x), static_cast<unsigned>(y))}; },
      lambda);
}

gf2::MatrixPredicate conjugate_membership(const AltOperation& op, const BitMatrix& g) {
  if (g.rows() != op.n() || !g.is_square()) throw Error(Errc::WidthMismatch, "conjugator must be n x n");
  if (!gf2::is_invertible(g)) throw Error(Errc::SingularConjugator, "conjugator is singular");
  const BitMatrix g_inv = gf2::inverse(g);
  return [op, g, g_inv](const BitMatrix& lambda) { return is_member(op, g_inv * lambda * g); };
}

bool preserves_span(std::span<const BitVec> basis, const BitMatrix& lambda) {
  std::vector<Word> words;
  std::vector<Word> images;
  for (const auto& v : basis) {
    words.push_back(v.word());
    images.push_back(lambda.apply(v.word()));
  }
  const int r = gf2::rank_of_words(words);
  if (gf2::rank_of_words(images) != r) return false;
  words.insert(words.end(), images.begin(), images.end());
  return gf2::rank_of_words(words) == r;
}

BitMatrix assemble(const BitMatrix& a, const BitMatrix& b, const BitMatrix& d) {
  const int m = a.rows();
  const int n = m + d.rows();
  BitMatrix out(n, n);
  out.set_block(0, 0, a);
  out.set_block(0, m, b);
  out.set_block(m, m, d);
  return out;
}

std::vector<BitMatrix> stabilizer(const BitVec& b) {
  std::vector<BitMatrix> out;
  for (auto& dm : gf2::enumerate_gl(b.width()))
    if (dm.apply(b.word()) == b.word()) out.push_back(std::move(dm));
  return out;
}

std::vector<LambdaElement> enumerate_single_block(const AltOperation& op) {
  const int s = op.n();
  const int d = op.d();
  if (d != s - 2) throw Error(Errc::WrongRegime, "single-block enumeration needs d = s - 2");
  if (s > kMaxEnumerationWidth) throw Error(Errc::SizeTooLarge, "single-block enumeration is limited to s <= 6");
  const BitVec b = op.spec().b(1, 2);
  const auto as = gf2::enumerate_gl(2);
  const auto ds = stabilizer(b);
  std::vector<LambdaElement> out;
  out.reserve(as.size() * ds.size() << (2 * d));
  for (const auto& a : as)
    for (Word bits = 0; bits < (Word{1} << (2 * d)); ++bits) {
      BitMatrix bm(2, d);
      bm.set_row(0, bits >> d);
      bm.set_row(1, bits & gf2::low_mask(d));
      for (const auto& dm : ds)
        out.push_back({assemble(a, bm, dm), Decomposition{{0}, {a}, {bm}, {dm}}});
    }
  return out;
}

LambdaElement sample_parallel(const ParallelOperation& op, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_parallel(op, rng);
}

LambdaElement sample_parallel(const ParallelOperation& op, std::mt19937_64& rng) {
  const BitVec b = shared_vector(op);
  const int s = op.s();
  const int d = s - 2;
  const int blocks = op.block_count();
  const int wd = blocks * d;

  Decomposition dec;
  dec.perm.resize(static_cast<std::size_t>(blocks));
  std::iota(dec.perm.begin(), dec.perm.end(), 0);
  for (int i = blocks - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(dec.perm[static_cast<std::size_t>(i)], dec.perm[static_cast<std::size_t>(pick(rng))]);
  }
  static const auto gl2 = gf2::enumerate_gl(2);
  std::uniform_int_distribution<std::size_t> pick_a(0, gl2.size() - 1);
  for (int i = 0; i < blocks; ++i) dec.a_blocks.push_back(gl2[pick_a(rng)]);
  for (int k = 0; k < blocks * blocks; ++k) dec.b_blocks.push_back(random_matrix(2, d, rng));

  // Constraints u_i D = u_{perm(i)} with u_i = b placed in block i. Writing
  // P D = Q for a basis P starting with the u_i, the first rows of Q are fixed
  // and the rest are free; D is invertible iff Q is.
  std::vector<Word> u;
  for (int i = 0; i < blocks; ++i) u.push_back(b_in_block(b, i, blocks));
  const BitMatrix p = complete_basis(wd, u);
  const BitMatrix p_inv = gf2::inverse(p);
  BitMatrix q(wd, wd);
  for (int i = 0; i < blocks; ++i) q.set_row(i, u[static_cast<std::size_t>(dec.perm[static_cast<std::size_t>(i)])]);
  bool found = false;
  for (int attempt = 0; attempt < kRejectionCap && !found; ++attempt) {
    for (int r = blocks; r < wd; ++r) q.set_row(r, rng() & gf2::low_mask(wd));
    found = gf2::is_invertible(q);
  }
  BitMatrix global_d(wd, wd);
  if (found) {
    global_d = p_inv * q;
  } else {
    for (int i = 0; i < blocks; ++i)
      global_d.set_block(i * d, dec.perm[static_cast<std::size_t>(i)] * d, BitMatrix::identity(d));
  }
  dec.d_blocks = split_d(global_d, blocks, d);
  BitMatrix lam = assemble_parallel(s, dec);
  return {std::move(lam), std::move(dec)};
}

std::optional<Decomposition> parallel_decomposition(const ParallelOperation& op, const BitMatrix& lambda) {
  const int s = op.s();
  const int blocks = op.block_count();
  const int n = op.n();
  if (lambda.rows() != n || lambda.cols() != n) throw Error(Errc::WidthMismatch, "matrix must be n x n");
  const BitVec b = shared_vector(op);
  const int d = s - 2;

  Decomposition dec;
  std::vector<bool> used(static_cast<std::size_t>(blocks), false);
  for (int i = 0; i < blocks; ++i) {
    // C blocks: weak rows must not reach strong columns.
    for (int j = 0; j < blocks; ++j)
      if (lambda.block(i * s + 2, j * s, d, 2) != BitMatrix(d, 2)) return std::nullopt;
    int target = -1;
    for (int j = 0; j < blocks; ++j) {
      const BitMatrix a = lambda.block(i * s, j * s, 2, 2);
      if (a == BitMatrix(2, 2)) continue;
      if (target >= 0 || !gf2::is_invertible(a)) return std::nullopt;
      target = j;
    }
    if (target < 0 || used[static_cast<std::size_t>(target)]) return std::nullopt;
    used[static_cast<std::size_t>(target)] = true;
    dec.perm.push_back(target);
    dec.a_blocks.push_back(lambda.block(i * s, target * s, 2, 2));
  }
  BitMatrix global_d(blocks * d, blocks * d);
  for (int i = 0; i < blocks; ++i)
    for (int j = 0; j < blocks; ++j) {
      dec.b_blocks.push_back(lambda.block(i * s, j * s + 2, 2, d));
      const BitMatrix dij = lambda.block(i * s + 2, j * s + 2, d, d);
      const Word expect = j == dec.perm[static_cast<std::size_t>(i)] ? b.word() : 0;
      if (dij.apply(b.word()) != expect) return std::nullopt;
      dec.d_blocks.push_back(dij);
      global_d.set_block(i * d, j * d, dij);
    }
  if (!gf2::is_invertible(global_d)) return std::nullopt;
  return dec;
}

ParallelCount count_parallel(int s, int blocks) {
  if (s < 3 || blocks < 1) throw Error(Errc::DimensionOutOfRange, "need s >= 3 and at least one block");
  const int d = s - 2;
  ParallelCount c;
  c.permutations = 1;
  for (int k = 2; k <= blocks; ++k) c.permutations *= k;
  c.a_choices = 1;
  for (int k = 0; k < blocks; ++k) c.a_choices *= 6;
  c.b_choices = BigInt(1) << (2 * d * blocks * blocks);
  // Invertible D with b fixed images on b independent vectors:
  // prod_{k = b}^{bd - 1} (2^{bd} - 2^k).
  c.d_choices = 1;
  const int wd = blocks * d;
  for (int k = blocks; k < wd; ++k) c.d_choices *= (BigInt(1) << wd) - (BigInt(1) << k);
  c.total = c.permutations * c.a_choices * c.b_choices * c.d_choices;
  return c;
}

BigInt count_d_exhaustive(const ParallelOperation& op) {
  const BitVec b = shared_vector(op);
  const int blocks = op.block_count();
  const int d = b.width();
  const int wd = blocks * d;
  std::vector<Word> u;
  for (int i = 0; i < blocks; ++i) u.push_back(b_in_block(b, i, blocks));

  BigInt count = 0;
  if (wd * wd <= kMaxExhaustiveBits) {
    // Every wd x wd matrix.
    BitMatrix dm(wd, wd);
    for (Word t = 0; t < (Word{1} << (wd * wd)); ++t) {
      for (int r = 0; r < wd; ++r) dm.set_row(r, (t >> (wd * (wd - 1 - r))) & gf2::low_mask(wd));
      bool ok = true;
      for (const Word ui : u) ok = ok && dm.apply(ui) == ui;
      if (ok && gf2::is_invertible(dm)) ++count;
    }
    return count;
  }
  const int free_bits = (wd - blocks) * wd;
  if (free_bits > kMaxExhaustiveBits)
    throw Error(Errc::SizeTooLarge, "D constraint space exceeds 2^24 candidates");
  // Constraint-space enumeration: Q with fixed leading rows.
  BitMatrix q(wd, wd);
  for (int i = 0; i < blocks; ++i) q.set_row(i, u[static_cast<std::size_t>(i)]);
  for (Word t = 0; t < (Word{1} << free_bits); ++t) {
    for (int r = blocks; r < wd; ++r) q.set_row(r, (t >> (wd * (wd - 1 - r))) & gf2::low_mask(wd));
    if (gf2::is_invertible(q)) ++count;
  }
  return count;
}

std::vector<AdmissiblePair> admissible_pairs(const AltOperation& op, SearchOrder order) {
  const int m = op.strong_dim();
  const int d = op.d();
  if (m > 4 || d > 4) throw Error(Errc::SizeTooLarge, "admissible pair search needs m, d <= 4");
  std::vector<Word> b_pairs;
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) b_pairs.push_back(op.spec().b(i, j).word());

  if (order == SearchOrder::Automatic)
    order = (m == 3 && op.error_dim() == 2) ? SearchOrder::DFirst : SearchOrder::AFirst;

  const auto as = gf2::enumerate_gl(m);
  const auto ds = gf2::enumerate_gl(d);
  std::vector<AdmissiblePair> out;
  if (order == SearchOrder::AFirst) {
    std::unordered_map<Word, std::vector<std::size_t>> by_image;
    for (std::size_t k = 0; k < ds.size(); ++k) by_image[pack_pairs(images_for(ds[k], b_pairs), d)].push_back(k);
    for (const auto& a : as) {
      const auto it = by_image.find(pack_pairs(rhs_for(a, b_pairs, m), d));
      if (it == by_image.end()) continue;
      for (const std::size_t k : it->second) out.push_back({a, ds[k]});
    }
  } else {
    std::unordered_map<Word, std::vector<std::size_t>> by_rhs;
    for (std::size_t k = 0; k < as.size(); ++k) by_rhs[pack_pairs(rhs_for(as[k], b_pairs, m), d)].push_back(k);
    for (const auto& dm : ds) {
      const auto it = by_rhs.find(pack_pairs(images_for(dm, b_pairs), d));
      if (it == by_rhs.end()) continue;
      for (const std::size_t k : it->second) out.push_back({as[k], dm});
    }
  }
  return out;
}

std::vector<LambdaElement> enumerate_s_minus_3(const AltOperation& op, SearchOrder order) {
  const int s = op.n();
  const int d = op.d();
  if (d != s - 3) throw Error(Errc::WrongRegime, "this enumeration needs d = s - 3");
  if (s > kMaxEnumerationWidth) throw Error(Errc::SizeTooLarge, "enumeration is limited to s <= 6");
  const auto pairs = admissible_pairs(op, order);
  std::vector<LambdaElement> out;
  out.reserve(pairs.size() << (3 * d));
  for (const auto& [a, dm] : pairs)
    for (Word bits = 0; bits < (Word{1} << (3 * d)); ++bits) {
      BitMatrix bm(3, d);
      for (int r = 0; r < 3; ++r) bm.set_row(r, (bits >> (d * (2 - r))) & gf2::low_mask(d));
      out.push_back({assemble(a, bm, dm), std::nullopt});
    }
  return out;
}

}  // namespace altdiff::homega
