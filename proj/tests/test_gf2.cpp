#include <doctest.h>

#include <random>
#include <set>

#include "altdiff/error.hpp"
#include "altdiff/gf2.hpp"
#include "oracles.hpp"

using namespace altdiff;
using gf2::BitMatrix;
using gf2::BitVec;

namespace {

BitMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  BitMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) m.set_row(r, rng() & gf2::low_mask(cols));
  return m;
}

}  // namespace

TEST_CASE("bit vectors follow the x_1-is-most-significant convention") {
  const auto v = BitVec::parse_binary("1000");
  CHECK(v.width() == 4);
  CHECK(v.word() == 0b1000);
  CHECK(v.get(1));
  CHECK_FALSE(v.get(4));
  CHECK(BitVec::unit(4, 4).word() == 1);
  CHECK(v.to_binary() == "1000");
  CHECK(BitVec::parse_hex("a5").word() == 0xA5);
  CHECK((BitVec::parse_binary("1100") + BitVec::parse_binary("1010")).to_binary() == "0110");
  CHECK(BitVec::parse_binary("1011").weight() == 3);
  CHECK_THROWS_AS(BitVec::parse_binary("10x1"), Error);
}

TEST_CASE("row vectors are acted on from the right") {
  const auto m = BitMatrix::from_strings({"110", "011", "001"});
  // (1,0,0) M is the first row
  CHECK(m.apply(0b100) == 0b110);
  CHECK(m.apply(0b011) == (0b011 ^ 0b001));
  CHECK(m.apply(BitVec::parse_binary("010")).to_binary() == "011");
}

TEST_CASE("parse and render round trip") {
  const auto m = BitMatrix::parse("101\n 011 \n\n110\n");
  CHECK(m.rows() == 3);
  CHECK(BitMatrix::parse(m.to_string()) == m);
  CHECK(m.to_string() == "101\n011\n110\n");
}

TEST_CASE("products and ranks agree with the schoolbook oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 9);
    const int k = 1 + static_cast<int>(rng() % 9);
    const int p = 1 + static_cast<int>(rng() % 9);
    const auto a = random_matrix(n, k, rng);
    const auto b = random_matrix(k, p, rng);
    CHECK(oracle::to_mat(a * b) == oracle::mul(oracle::to_mat(a), oracle::to_mat(b)));
    CHECK(gf2::rank(a) == oracle::rank(oracle::to_mat(a)));
    CHECK(a.transpose().transpose() == a);
  }
}

TEST_CASE("inverse, solve and kernel") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const auto m = random_matrix(n, n, rng);
    const bool invertible = oracle::rank(oracle::to_mat(m)) == n;
    CHECK(gf2::is_invertible(m) == invertible);
    if (invertible) {
      const auto inv = gf2::inverse(m);
      CHECK(m * inv == BitMatrix::identity(n));
      CHECK(inv * m == BitMatrix::identity(n));
    } else {
      CHECK_THROWS_AS(gf2::inverse(m), Error);
    }
    const auto kernel = gf2::left_kernel(m);
    CHECK(static_cast<int>(kernel.size()) == n - gf2::rank(m));
    for (const auto x : kernel) CHECK(m.apply(x) == 0);

    const BitVec target(n, rng() & gf2::low_mask(n));
    const auto x = gf2::solve(m, target);
    if (x) CHECK(m.apply(*x) == target);
    if (invertible) CHECK(x.has_value());
  }
}

TEST_CASE("singular inverse reports its code") {
  try {
    (void)gf2::inverse(BitMatrix::from_strings({"11", "11"}));
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SingularMatrix);
  }
}

TEST_CASE("general linear groups") {
  CHECK(gf2::gl_order(2) == 6);
  CHECK(gf2::gl_order(3) == 168);
  CHECK(gf2::gl_order(4) == 20160);
  for (int s = 1; s <= 4; ++s) {
    const auto all = gf2::enumerate_gl(s);
    CHECK(all.size() == gf2::gl_order(s));
    const std::set<BitMatrix> unique(all.begin(), all.end());
    CHECK(unique.size() == all.size());
    for (const auto& g : all) CHECK(gf2::is_invertible(g));
  }
  CHECK_THROWS_AS(gf2::enumerate_gl(5), Error);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) CHECK(gf2::is_invertible(gf2::random_invertible(16, rng)));
}

TEST_CASE("coset representatives tile the group") {
  const auto group = gf2::enumerate_gl(3);
  // upper unitriangular matrices: order 8
  const gf2::MatrixPredicate upper = [](const BitMatrix& m) {
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c <= r; ++c)
        if (m.at(r, c) != (r == c)) return false;
    return true;
  };
  for (const auto side : {gf2::CosetSide::Left, gf2::CosetSide::Right}) {
    const auto reps = gf2::coset_representatives(group, upper, side);
    CHECK(reps.size() == 168 / 8);
    // no two representatives share a coset
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j) {
        const auto q = side == gf2::CosetSide::Left ? gf2::inverse(reps[i]) * reps[j]
                                                    : reps[j] * gf2::inverse(reps[i]);
        CHECK_FALSE(upper(q));
      }
  }
  const gf2::MatrixPredicate not_group = [](const BitMatrix& m) { return m.at(0, 0); };
  CHECK_THROWS_AS(gf2::coset_representatives(group, not_group, gf2::CosetSide::Left), Error);
}
