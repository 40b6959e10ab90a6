#pragma once

// Max-/min-standard forms, the isodiametric condition systems (i)-(iv),
// near-isodiametric matrices and a seeded sampler for the parameter
// polytope Iso(d) of isodiametric min-standard matrices.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "tropiso/matrix.hpp"

namespace tropiso {

/// MaxStandard: max-plus, identity optimal, first row and column (1,0,…,0).
/// MinStandard: min-plus, identity optimal, first row and column (0,1,…,1).
enum class StandardVariant { MaxStandard, MinStandard };

std::string_view to_string(StandardVariant v);
Semiring semiring_of(StandardVariant v);

/// One equivalence move. Permutations follow TropMatrix::permute_rows /
/// permute_columns; offsets are added to every entry of a row / column.
struct EquivalenceMove {
  enum class Kind { RowPermutation, ColumnPermutation, RowOffsets, ColumnOffsets };
  Kind kind;
  std::vector<std::size_t> permutation;
  std::vector<Rational> offsets;
};

std::string_view to_string(EquivalenceMove::Kind k);

struct StandardForm {
  StandardVariant variant;
  TropMatrix matrix;
  std::vector<EquivalenceMove> trail;
};

/// Applies the moves in order.
TropMatrix replay(const TropMatrix& original, const std::vector<EquivalenceMove>& trail);

/// Shape test only: semiring, first row/column and optimality of the identity.
bool is_standard(const TropMatrix& a, StandardVariant variant);

/// Equivalent standard matrix. The lexicographically smallest optimal
/// permutation (in the variant's semiring) is moved onto the diagonal by
/// permuting columns, then row and column offsets fix the first column and
/// row. The input is read in the variant's semiring. Never transposes.
StandardForm to_standard(const TropMatrix& a, StandardVariant variant);

struct ConditionVerdict {
  bool holds = true;
  std::vector<std::size_t> witness;  // first violating index tuple (0-based)
};

enum class Classification { Isodiametric, NearIsodiametric, Neither };
std::string_view to_string(Classification c);

struct IsoReport {
  StandardVariant variant;
  ConditionVerdict cond_i;
  ConditionVerdict cond_ii;
  ConditionVerdict cond_iii;
  ConditionVerdict cond_iv;
  bool strict_iv;
  Rational tdiam;
  Rational tvol;
  Classification classification;

  bool all_conditions() const { return cond_i.holds && cond_ii.holds && cond_iii.holds && cond_iv.holds; }
};

/// Evaluates (i)-(iv) of the variant exactly, plus tdiam and tvol.
/// Max: -1<=a_ij<=1, a_ii=1, a_ji=-a_ij, -1<=a_ij+a_jk+a_ki<=1.
/// Min:  0<=b_ij<=2, b_ii=0, b_ij+b_ji=2, 2<=b_ij+b_jk+b_ki<=4.
/// Throws PreconditionError("not-standard") unless is_standard().
IsoReport check_conditions(const TropMatrix& a, StandardVariant variant);

/// For a standard matrix satisfying (i)-(iv): true iff tdiam = tvol = 2.
/// A false return contradicts the isodiametric theorem.
bool converse_check(const TropMatrix& a, StandardVariant variant);

/// Nonnegative, zero diagonal, b_ij+b_ji = 2 and 2 <= b_ij+b_jk+b_ki <= 4.
/// The upper bound b_ij <= 2 is not required.
bool is_near_isodiametric(const TropMatrix& b);

/// Dimension of Iso(d): (d^2 - 3d)/2 + 1.
std::size_t iso_free_parameters(std::size_t d);

struct SamplerOptions {
  bool require_strict = false;
  std::size_t max_attempts = 1'000'000;
  /// Free entries are drawn uniformly from {0, 1/resolution, …, 2}.
  std::uint32_t resolution = 1000;
};

/// Isodiametric min-standard d×d matrix, d >= 3. Entries b_ij (2 <= i < j)
/// are uniform on the grid over [0,2], b_ji = 2 - b_ij; rejected until the
/// triangle condition (iv) holds (strictly when requested).
TropMatrix sample_isodiametric(std::size_t d, std::mt19937_64& rng, const SamplerOptions& options = {});
TropMatrix sample_isodiametric(std::size_t d, std::uint64_t seed, const SamplerOptions& options = {});

/// All-ones matrix minus A with the semiring flipped: max-standard to
/// min-standard and back. Throws PreconditionError for non-standard input.
TropMatrix negate_complement(const TropMatrix& a);

/// B(λ) = [[0,1,1],[1,0,λ],[1,2-λ,0]] over min-plus.
TropMatrix b_lambda(const Rational& lambda);

}  // namespace tropiso
