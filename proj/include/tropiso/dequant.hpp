#pragma once

// Dequantized tropical volume of a max-plus d×m matrix: the log-limit of
// classical volumes of lifted polytopes, computed as the best tropical
// permanent over d-column subsets.

#include <optional>
#include <string_view>
#include <vector>

#include "tropiso/assignment.hpp"
#include "tropiso/errors.hpp"
#include "tropiso/hull.hpp"
#include "tropiso/matrix.hpp"

namespace tropiso {

/// Max-plus assignment value of a square matrix; Bottom cells forbidden.
TropScalar tper(const TropMatrix& c);

enum class QvolMethod { BruteForce, TransportLP };
std::string_view to_string(QvolMethod m);
QvolMethod parse_qvol_method(std::string_view name);  // "brute" | "lp"

struct QvolResult {
  TropScalar value;                          // Bottom when every row assignment is blocked
  std::vector<std::size_t> witness_columns;  // increasing; empty when value is Bottom
  std::optional<Permutation> witness_perm;   // row i -> witness_columns[perm[i]]
  QvolMethod method;
  std::optional<ParityVerdict> sign_generic_bar;  // filled when requested
};

struct QvolOptions {
  bool check_sign_genericity = true;
  std::size_t cap = kDefaultEnumerationCap;
};

/// qvol⁺ A = max over d-subsets I of tper A[I]. BruteForce scans subsets in
/// lexicographic order and keeps the first best subset with its
/// lexicographically smallest optimal permutation; TransportLP solves the
/// transportation LP by min-cost flow. Requires a max-plus matrix, m >= d.
QvolResult qvol_plus(const TropMatrix& a, QvolMethod method = QvolMethod::BruteForce,
                     const QvolOptions& options = {});

/// A with an identically zero row added on top.
TropMatrix bar(const TropMatrix& a);

struct SignGenericReport {
  ParityVerdict verdict;
  std::size_t submatrices_checked = 0;
  // Offending maximal square submatrix (MixedParity or Unknown).
  std::vector<std::size_t> witness_rows;
  std::vector<std::size_t> witness_columns;
};

/// Parity test on every maximal square submatrix (all column subsets of
/// size rows for wide matrices, all row subsets of size cols for tall ones).
/// With `use_bar` the test runs on bar(A).
SignGenericReport sign_generic(const TropMatrix& a, bool use_bar, std::size_t cap = kDefaultEnumerationCap);

class NotSignGenericError : public Error {
 public:
  explicit NotSignGenericError(SignGenericReport report);
  const SignGenericReport& report() const { return report_; }

 private:
  SignGenericReport report_;
};

/// qvol A, defined when bar(A) is tropically sign-generic. Throws
/// NotSignGenericError, or PreconditionError("parity-unknown") when the
/// enumeration cap was reached.
TropScalar qvol(const TropMatrix& a, std::size_t cap = kDefaultEnumerationCap);

/// Entry (i,j) evaluates to coefficient_ij · t^{base_ij}, multiplied by
/// `boost` on `boosted_cells`. Bottom exponents evaluate to 0.
struct LiftSpec {
  TropMatrix base;
  std::vector<std::vector<Rational>> coefficients;
  Rational boost;
  std::vector<std::pair<std::size_t, std::size_t>> boosted_cells;
};

/// Unit coefficients, boost (d+1)! on the optimal assignment of qvol⁺.
LiftSpec default_lift(const TropMatrix& a);

/// Requires t > 1.
std::vector<std::vector<double>> lift_eval(const LiftSpec& spec, double t);

struct SlopeSample {
  double t;
  double volume;
  double log_ratio;  // log(volume) / log(t)
};

struct SlopeResult {
  std::vector<SlopeSample> samples;  // only t with positive volume
  double ratio_at_largest_t;
  double slope;  // least squares of log volume against log t
};

class DegenerateHullError : public Error {
 public:
  explicit DegenerateHullError(const std::string& m) : Error("degenerate-hull", m) {}
};

std::vector<double> default_t_grid();  // 1e2, 1e3, …, 1e6

/// Evaluates the default lift of A (d <= 3) on the grid and measures how
/// log vol conv A(t) grows with log t. Requires bar(A) sign-generic.
SlopeResult dequant_slope(const TropMatrix& a, const std::vector<double>& t_grid = default_t_grid(),
                          std::size_t cap = kDefaultEnumerationCap);

using OrdinaryMatrix = std::vector<std::vector<Rational>>;

struct BoundReport {
  Rational volume;
  std::size_t alpha;
  TropScalar qvol_log;  // qvol⁺ of Log A (max-plus, Bottom if no finite term)
  double bound;         // alpha·(d+1)·exp(qvol_log)
  bool holds;
};

inline constexpr double kBoundSlack = 1e-9;

/// vol conv A <= alpha (d+1) exp(qvol⁺(Log A)) for a nonnegative d×m
/// matrix, d <= 3; zero entries become Bottom under Log. `holds` allows a
/// relative slack of kBoundSlack.
BoundReport volume_bound_check(const OrdinaryMatrix& a);

/// Entrywise natural log as an exact max-plus matrix (0 -> Bottom).
TropMatrix log_matrix(const OrdinaryMatrix& a);

struct CauchyBinetSides {
  TropScalar lhs;  // tper (B ⊙ C)[I]
  TropScalar rhs;  // max over d-subsets K of tper B[K] + tper C[K, I]
};

CauchyBinetSides cauchy_binet_sides(const TropMatrix& b, const TropMatrix& c, const std::vector<std::size_t>& cols);
bool cauchy_binet_check(const TropMatrix& b, const TropMatrix& c, const std::vector<std::size_t>& cols);

enum class MeasureCheck { Equal, NotEqual, Skip };
std::string_view to_string(MeasureCheck m);

/// qvol(A | B) = max(qvol⁺ A, qvol⁺ B), evaluated when bar(A | B) is
/// sign-generic; Skip otherwise.
MeasureCheck idempotent_measure_check(const TropMatrix& a, const TropMatrix& b,
                                      std::size_t cap = kDefaultEnumerationCap);

/// Horizontal concatenation (same rows and semiring).
TropMatrix concat_columns(const TropMatrix& a, const TropMatrix& b);

/// Visits every k-subset of {0,…,n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t r = i; r < k; ++r) idx[r] = idx[r - 1] + 1;
  }
}

}  // namespace tropiso
