#include <doctest.h>

#include <random>
#include <set>

#include "altdiff/error.hpp"
#include "altdiff/homega.hpp"
#include "oracles.hpp"
#include "test_data.hpp"

using namespace altdiff;
using altop::AltOperation;
using gf2::BitMatrix;
using gf2::BitVec;
using homega::BigInt;

namespace {

AltOperation toy_block(const char* b = "01") { return altop::two_strong_operation(4, BitVec::parse_binary(b)); }

bool oracle_member(const AltOperation& op, const BitMatrix& lambda) {
  const auto spec = op.spec();
  return oracle::is_automorphism_basis(oracle::to_mat(lambda), op.n(),
                                       [&](std::uint64_t x, std::uint64_t y) { return oracle::dot(spec, x, y); });
}

BigInt factorial(int k) {
  BigInt f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("H for s = 4 by construction and by filtering GL(4)") {
  const auto op = toy_block();
  const auto built = homega::enumerate_single_block(op);
  CHECK(built.size() == 192);

  std::set<BitMatrix> constructive;
  for (const auto& e : built) constructive.insert(e.matrix);
  CHECK(constructive.size() == 192);

  std::set<BitMatrix> filtered;
  const auto table = op.make_table();
  for (const auto& g : gf2::enumerate_gl(4)) {
    const bool full = oracle::is_automorphism_full(oracle::to_mat(g), 4,
                                                   [&](std::uint64_t x, std::uint64_t y) { return table(x, y); });
    CHECK(homega::is_member(op, g) == full);
    if (full) filtered.insert(g);
  }
  CHECK(filtered == constructive);
}

TEST_CASE("single block shape") {
  const auto op = toy_block("11");
  for (const auto& e : homega::enumerate_single_block(op)) {
    // lower-left block vanishes and D fixes b
    CHECK(e.matrix.block(2, 0, 2, 2) == BitMatrix::zero(2, 2));
    CHECK(e.matrix.block(2, 2, 2, 2).apply(op.spec().b(1, 2)) == op.spec().b(1, 2));
  }
  CHECK(homega::stabilizer(BitVec::parse_binary("001")).size() == 24);
  CHECK_THROWS_AS(homega::enumerate_single_block(AltOperation::build(testdata::example1())), Error);
}

TEST_CASE("s = 6, d = 3 counts") {
  const auto op1 = AltOperation::build(testdata::example1());
  const auto op2 = AltOperation::build(testdata::example2());
  CHECK(homega::enumerate_s_minus_3(op1).size() == 86016);
  const auto h2 = homega::enumerate_s_minus_3(op2);
  CHECK(h2.size() == 49152);

  const auto pairs = homega::admissible_pairs(op2);
  std::set<BitMatrix> ds;
  for (const auto& p : pairs) ds.insert(p.d);
  CHECK(ds.size() == 24);

  // both search orders find the same pairs
  for (const auto* op : {&op1, &op2}) {
    auto key = [](const std::vector<homega::AdmissiblePair>& v) {
      std::set<std::pair<BitMatrix, BitMatrix>> s;
      for (const auto& p : v) s.emplace(p.a, p.d);
      return s;
    };
    CHECK(key(homega::admissible_pairs(*op, homega::SearchOrder::AFirst)) ==
          key(homega::admissible_pairs(*op, homega::SearchOrder::DFirst)));
  }

  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> pick(0, h2.size() - 1);
  for (int i = 0; i < 300; ++i) CHECK(oracle_member(op2, h2[pick(rng)].matrix));
}

TEST_CASE("members fix the weak and error spaces") {
  for (const auto& spec : {testdata::example1(), testdata::example2()}) {
    const auto op = AltOperation::build(spec);
    const auto members = homega::enumerate_s_minus_3(op);
    const auto weak = op.weak_basis();
    const auto error = op.error_basis();
    for (std::size_t i = 0; i < members.size(); i += 97) {
      CHECK(homega::preserves_span(weak, members[i].matrix));
      CHECK(homega::preserves_span(error, members[i].matrix));
    }
  }
}

TEST_CASE("conjugate membership") {
  const auto op = toy_block();
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = gf2::random_invertible(4, rng);
    const auto member = homega::conjugate_membership(op, g);
    const auto conj_table = altop::conjugate_group(altop::TranslationGroup::from_operation(op), g).operation_table();
    int count = 0;
    for (const auto& lam : gf2::enumerate_gl(4)) {
      const bool expect = homega::is_member(conj_table, lam);
      REQUIRE(member(lam) == expect);
      count += expect;
    }
    CHECK(count == 192);
  }
  CHECK_THROWS_AS(homega::conjugate_membership(op, BitMatrix::zero(4, 4)), Error);
}

TEST_CASE("parallel group order") {
  for (int blocks = 1; blocks <= 6; ++blocks) {
    const auto c = homega::count_parallel(4, blocks);
    BigInt gl_part = 1;
    const int bd = 2 * blocks;
    for (int k = blocks; k < bd; ++k) gl_part *= (BigInt(1) << bd) - (BigInt(1) << k);
    const BigInt expect = factorial(blocks) * boost::multiprecision::pow(BigInt(6), blocks) *
                          (BigInt(1) << (2 * 2 * blocks * blocks)) * gl_part;
    CHECK(c.total == expect);
    CHECK(c.total == c.permutations * c.a_choices * c.b_choices * c.d_choices);
  }
  CHECK(homega::count_parallel(4, 1).total == 192);

  for (int blocks = 1; blocks <= 3; ++blocks) {
    const auto op = altop::ParallelOperation::compose(std::vector<AltOperation>(static_cast<std::size_t>(blocks), toy_block()));
    CHECK(homega::count_d_exhaustive(op) == homega::count_parallel(4, blocks).d_choices);
  }
  const auto five = altop::ParallelOperation::compose(
      std::vector<AltOperation>(2, altop::two_strong_operation(5, BitVec::parse_binary("101"))));
  CHECK(homega::count_d_exhaustive(five) == homega::count_parallel(5, 2).d_choices);
}

TEST_CASE("parallel sampling is sound") {
  const auto op = altop::ParallelOperation::compose({toy_block(), toy_block(), toy_block(), toy_block()});
  const auto op8 = altop::ParallelOperation::compose({toy_block(), toy_block()});
  const auto table8 = altop::CircTable::from_function(8, [&](gf2::Word x, gf2::Word y) { return op8.circ(x, y); });
  std::mt19937_64 rng(41);
  for (int i = 0; i < 1000; ++i) {
    const auto lam = homega::sample_parallel(op, rng);
    REQUIRE(lam.decomposition.has_value());
    CHECK(homega::is_member(op, lam.matrix));
    CHECK(homega::preserves_span(op.weak_basis(), lam.matrix));
    const auto back = homega::parallel_decomposition(op, lam.matrix);
    REQUIRE(back.has_value());
    CHECK(back->perm == lam.decomposition->perm);

    const auto small = homega::sample_parallel(op8, rng);
    CHECK(oracle::is_automorphism_basis(oracle::to_mat(small.matrix), 8,
                                        [&](std::uint64_t x, std::uint64_t y) { return table8.dot(x, y); }));
  }
  CHECK(homega::sample_parallel(op, 7).matrix == homega::sample_parallel(op, 7).matrix);

  const auto mixed = altop::ParallelOperation::compose({toy_block("01"), toy_block("10")});
  CHECK_THROWS_AS(homega::sample_parallel(mixed, 1), Error);
}

TEST_CASE("width checks") {
  CHECK_THROWS_AS(homega::is_member(toy_block(), BitMatrix::identity(5)), Error);
}
