#pragma once

// H = GL(V,+) ∩ GL(V,∘): invertible linear maps that are also automorphisms
// of the product x·y. Every member has the block shape
//
//     λ = [ A  B ]    A on the strong coordinates, D on the weak ones,
//         [ 0  D ]    lower-left block zero since λ fixes W.
//
// For a parallel operation the blocks are further split per s-bit block.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "altdiff/altop.hpp"
#include "altdiff/gf2.hpp"

namespace altdiff::homega {

using altop::AltOperation;
using altop::ParallelOperation;
using gf2::BitMatrix;
using gf2::BitVec;
using gf2::Word;
using BigInt = boost::multiprecision::cpp_int;

/// Block structure of a member of a parallel H. Block row i sends its strong
/// part to block column perm[i] through a_blocks[i]; b_blocks and d_blocks
/// are row-major over (i, j).
struct Decomposition {
  std::vector<int> perm;
  std::vector<BitMatrix> a_blocks;
  std::vector<BitMatrix> b_blocks;
  std::vector<BitMatrix> d_blocks;
};

struct LambdaElement {
  BitMatrix matrix;
  std::optional<Decomposition> decomposition;
};

/// λ invertible and (e_i·e_j)λ = (e_iλ)·(e_jλ) for all i < j.
/// Throws WidthMismatch unless λ is n x n.
bool is_member(const AltOperation& op, const BitMatrix& lambda);
bool is_member(const ParallelOperation& op, const BitMatrix& lambda);
bool is_member(const altop::CircTable& table, const BitMatrix& lambda);

/// Membership in H of the conjugate operation x ∘' y = ((xg) ∘ (yg)) g^{-1}:
/// λ belongs iff the matrix product g^{-1} λ g belongs to H of the base.
/// Throws SingularConjugator.
gf2::MatrixPredicate conjugate_membership(const AltOperation& op, const BitMatrix& g);

/// True iff the span of `basis` is mapped onto itself.
bool preserves_span(std::span<const BitVec> basis, const BitMatrix& lambda);

/// All [[A,B],[0,D]] with A in GL(2), B free, D in GL(d), bD = b, for
/// d = s - 2. Throws WrongRegime for other d and SizeTooLarge for s > 6.
std::vector<LambdaElement> enumerate_single_block(const AltOperation& op);

/// Matrices D in GL(d) with bD = b.
std::vector<BitMatrix> stabilizer(const BitVec& b);

/// Uniform π, A blocks and B blocks; D drawn uniformly from the affine space
/// cut out by the constraints and rejected until invertible (at most 10^4
/// tries, then the block-permutation D). All blocks must share the same
/// d = s - 2 defining vector; otherwise throws WrongRegime.
LambdaElement sample_parallel(const ParallelOperation& op, std::uint64_t seed);
LambdaElement sample_parallel(const ParallelOperation& op, std::mt19937_64& rng);

/// Reads the block shape off a member candidate; nullopt if λ does not have
/// the parallel shape (zero C blocks, one invertible A per block row and
/// column, bD_ij = b exactly on the A positions, invertible A and D).
std::optional<Decomposition> parallel_decomposition(const ParallelOperation& op, const BitMatrix& lambda);

struct ParallelCount {
  BigInt permutations;
  BigInt a_choices;
  BigInt b_choices;
  BigInt d_choices;
  BigInt total;
};

/// |H| for `blocks` copies of an s-bit operation with d = s - 2.
ParallelCount count_parallel(int s, int blocks);

/// Number of admissible global D for `op`, by exhaustive enumeration over all
/// (bd) x (bd) matrices for the identity permutation. Throws SizeTooLarge
/// above 2^24 candidates.
BigInt count_d_exhaustive(const ParallelOperation& op);

/// Pairs (A, D) in GL(3) x GL(d) meeting the three compatibility equations
/// b_ij D = sum over k1 < k2 of (A_ik1 A_jk2 + A_ik2 A_jk1) b_k1k2.
struct AdmissiblePair {
  BitMatrix a;
  BitMatrix d;
};

enum class SearchOrder { AFirst, DFirst, Automatic };

std::vector<AdmissiblePair> admissible_pairs(const AltOperation& op, SearchOrder order = SearchOrder::Automatic);

/// Every member for d = s - 3 (admissible pairs times free B). Throws
/// WrongRegime for other d and SizeTooLarge for s > 6.
std::vector<LambdaElement> enumerate_s_minus_3(const AltOperation& op, SearchOrder order = SearchOrder::Automatic);

/// Assembles [[A,B],[0,D]].
BitMatrix assemble(const BitMatrix& a, const BitMatrix& b, const BitMatrix& d);

}  // namespace altdiff::homega
