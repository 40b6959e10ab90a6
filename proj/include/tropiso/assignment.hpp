#pragma once

// Optimal assignment over a tropical matrix: tropical determinant,
// enumeration of optimal permutations, second-best value, tropical volume
// and parity of the optimal permutations.

#include <compare>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "tropiso/matrix.hpp"

namespace tropiso {

inline constexpr std::size_t kDefaultEnumerationCap = 10'000;

/// A bijection on {0, …, d-1}. Ordered lexicographically by images.
class Permutation {
 public:
  /// Throws DimensionError unless `images` is a bijection.
  explicit Permutation(std::vector<std::size_t> images);
  static Permutation identity(std::size_t d);

  std::size_t size() const { return images_.size(); }
  std::size_t operator[](std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t>& images() const { return images_; }

  /// +1 for even permutations, -1 for odd ones.
  int parity() const;
  bool is_identity() const;

  /// Σ a_{i,σ(i)}; Bottom if any selected entry is Bottom.
  TropScalar weight_of(const TropMatrix& a) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

 private:
  std::vector<std::size_t> images_;
};

struct TdetResult {
  TropScalar value;                   // Bottom when every permutation hits a Bottom cell
  std::optional<Permutation> witness;
};

/// Optimal value of the assignment problem in the matrix's semiring.
/// Bottom cells are forbidden.
TdetResult tdet(const TropMatrix& a);

/// Lexicographically smallest optimal permutation, or nullopt when tdet is Bottom.
std::optional<Permutation> lex_min_optimal(const TropMatrix& a);

struct OptimaList {
  std::vector<Permutation> perms;  // lexicographic order
  bool truncated = false;          // more optima exist beyond `cap`
};

/// Every permutation attaining tdet, at most `cap` of them.
OptimaList enumerate_optima(const TropMatrix& a, std::size_t cap = kDefaultEnumerationCap);

/// Best value over all permutations other than the witness of tdet.
/// Solved by re-optimising once per optimal edge with that edge forbidden.
/// Requires d >= 2 and finite entries.
TropScalar second_best(const TropMatrix& a);

/// |tdet - second_best| for finite square matrices with d >= 2.
Rational tvol(const TropMatrix& a);

struct AssignmentCertificate {
  TropScalar best_value;
  Permutation best_perm;
  TropScalar second_value;
  std::optional<Rational> tvol;  // nullopt stands for +inf (second best is Bottom)
  bool optimum_unique;
};

/// Bundles tdet, its witness and the second-best value. Bottom entries are
/// allowed as long as some permutation is finite; d >= 2.
AssignmentCertificate certify(const TropMatrix& a);

enum class ParityVerdict { SameParity, MixedParity, Unknown };
enum class ParityMethod { UniquenessShortcut, FullEnumeration, Capped };

std::string_view to_string(ParityVerdict v);
std::string_view to_string(ParityMethod m);

struct ParityReport {
  ParityVerdict verdict;
  std::size_t enumerated_count;
  ParityMethod method;
};

/// Do all optimal permutations share one parity? A unique optimum is
/// detected through the second-best value without enumerating.
ParityReport parity_report(const TropMatrix& a, std::size_t cap = kDefaultEnumerationCap);

namespace detail {

/// Minimum-cost assignment of every row to a distinct column (rows <= cols).
/// `cost[i][j] == nullopt` forbids the cell. Returns nullopt when no
/// complete assignment exists. Shortest augmenting paths with potentials.
struct RowAssignment {
  Rational cost;
  std::vector<std::size_t> row_to_col;
};
using CostGrid = std::vector<std::vector<std::optional<Rational>>>;
std::optional<RowAssignment> min_cost_assignment(const CostGrid& cost);

/// Costs for a matrix in its semiring: entries for min-plus, negated for max-plus.
CostGrid cost_grid(const TropMatrix& a);

}  // namespace detail

}  // namespace tropiso
