#include "tropiso/assignment.hpp"

#include <algorithm>
#include <string>

#include "tropiso/errors.hpp"

namespace tropiso {

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t x : images_) {
    if (x >= images_.size() || seen[x]) throw DimensionError("not a permutation");
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t d) {
  std::vector<std::size_t> id(d);
  for (std::size_t i = 0; i < d; ++i) id[i] = i;
  return Permutation(std::move(id));
}

int Permutation::parity() const {
  // Sign from the cycle decomposition: each cycle of length L adds L-1 transpositions.
  std::vector<bool> seen(images_.size(), false);
  std::size_t transpositions = 0;
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (std::size_t k = start; !seen[k]; k = images_[k]) {
      seen[k] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0 ? 1 : -1;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

TropScalar Permutation::weight_of(const TropMatrix& a) const {
  if (a.rows() != size() || a.cols() < size()) throw DimensionError("permutation does not fit the matrix");
  Rational sum = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    const TropScalar& x = a(i, images_[i]);
    if (x.is_bottom()) return TropScalar::bottom();
    sum += x.value();
  }
  return TropScalar(sum);
}

namespace detail {

std::optional<RowAssignment> min_cost_assignment(const CostGrid& cost) {
  const std::size_t n = cost.size();
  if (n == 0) return RowAssignment{Rational(0), {}};
  const std::size_t m = cost.front().size();
  if (n > m) return std::nullopt;

  // 1-based potentials; column 0 is the virtual root of the search tree.
  std::vector<Rational> u(n + 1, Rational(0)), v(m + 1, Rational(0));
  std::vector<std::size_t> match(m + 1, 0), way(m + 1, 0);

  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<std::optional<Rational>> minv(m + 1);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      std::optional<Rational> delta;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        if (const auto& c = cost[i0 - 1][j - 1]) {
          Rational cur = *c - u[i0] - v[j];
          if (!minv[j] || cur < *minv[j]) {
            minv[j] = std::move(cur);
            way[j] = j0;
          }
        }
        if (minv[j] && (!delta || *minv[j] < *delta)) {
          delta = minv[j];
          j1 = j;
        }
      }
      // The alternating tree reaches no free column: Hall's condition fails.
      if (!delta) return std::nullopt;
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match[j]] += *delta;
          v[j] -= *delta;
        } else if (minv[j]) {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  RowAssignment out{Rational(0), std::vector<std::size_t>(n)};
  for (std::size_t j = 1; j <= m; ++j)
    if (match[j] != 0) {
      out.row_to_col[match[j] - 1] = j - 1;
      out.cost += *cost[match[j] - 1][j - 1];
    }
  return out;
}

CostGrid cost_grid(const TropMatrix& a) {
  CostGrid g(a.rows(), std::vector<std::optional<Rational>>(a.cols()));
  const bool negate = a.semiring() == Semiring::MaxPlus;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j).is_finite()) g[i][j] = negate ? Rational(-a.value(i, j)) : a.value(i, j);
  return g;
}

}  // namespace detail

namespace {

TropScalar from_cost(Semiring s, const Rational& cost) {
  return s == Semiring::MaxPlus ? TropScalar(Rational(-cost)) : TropScalar(cost);
}

struct Solved {
  Rational cost;
  Permutation perm;
};

std::optional<Solved> solve(const detail::CostGrid& g) {
  auto r = detail::min_cost_assignment(g);
  if (!r) return std::nullopt;
  return Solved{std::move(r->cost), Permutation(std::move(r->row_to_col))};
}

// Best cost over permutations other than `avoid`: some row i must leave
// its optimal column, so forbid each (i, avoid(i)) in turn.
std::optional<Rational> second_best_cost(detail::CostGrid g, const Permutation& avoid) {
  std::optional<Rational> best;
  for (std::size_t i = 0; i < avoid.size(); ++i) {
    auto saved = std::move(g[i][avoid[i]]);
    g[i][avoid[i]].reset();
    if (auto r = detail::min_cost_assignment(g); r && (!best || r->cost < *best)) best = std::move(r->cost);
    g[i][avoid[i]] = std::move(saved);
  }
  return best;
}

class OptimaSearch {
 public:
  OptimaSearch(const detail::CostGrid& g, Rational target, std::size_t limit)
      : g_(g), target_(std::move(target)), limit_(limit), d_(g.size()), used_(d_, false), current_(d_) {}

  std::vector<Permutation> run() {
    dfs(0, Rational(0));
    return std::move(found_);
  }

 private:
  // Optimal cost of assigning rows [row, d) to the unused columns.
  std::optional<Rational> completion(std::size_t row) const {
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < d_; ++j)
      if (!used_[j]) free_cols.push_back(j);
    detail::CostGrid sub;
    for (std::size_t i = row; i < d_; ++i) {
      std::vector<std::optional<Rational>> r;
      for (std::size_t j : free_cols) r.push_back(g_[i][j]);
      sub.push_back(std::move(r));
    }
    auto res = detail::min_cost_assignment(sub);
    if (!res) return std::nullopt;
    return res->cost;
  }

  void dfs(std::size_t row, const Rational& partial) {
    if (found_.size() >= limit_) return;
    if (row == d_) {
      found_.emplace_back(current_);
      return;
    }
    for (std::size_t j = 0; j < d_ && found_.size() < limit_; ++j) {
      if (used_[j] || !g_[row][j]) continue;
      Rational next = partial + *g_[row][j];
      used_[j] = true;
      auto rest = completion(row + 1);
      if (rest && next + *rest == target_) {
        current_[row] = j;
        dfs(row + 1, next);
      }
      used_[j] = false;
    }
  }

  const detail::CostGrid& g_;
  Rational target_;
  std::size_t limit_;
  std::size_t d_;
  std::vector<bool> used_;
  std::vector<std::size_t> current_;
  std::vector<Permutation> found_;
};

}  // namespace

TdetResult tdet(const TropMatrix& a) {
  a.require_square("tdet");
  auto r = solve(detail::cost_grid(a));
  if (!r) return {TropScalar::bottom(), std::nullopt};
  return {from_cost(a.semiring(), r->cost), std::move(r->perm)};
}

OptimaList enumerate_optima(const TropMatrix& a, std::size_t cap) {
  a.require_square("enumerate_optima");
  if (cap == 0) throw PreconditionError("enumeration cap must be positive");
  const auto g = detail::cost_grid(a);
  auto best = solve(g);
  if (!best) return {};
  OptimaList out;
  out.perms = OptimaSearch(g, best->cost, cap + 1).run();
  if (out.perms.size() > cap) {
    out.perms.pop_back();
    out.truncated = true;
  }
  return out;
}

std::optional<Permutation> lex_min_optimal(const TropMatrix& a) {
  auto list = enumerate_optima(a, 1);
  if (list.perms.empty()) return std::nullopt;
  return list.perms.front();
}

TropScalar second_best(const TropMatrix& a) {
  a.require_square("second_best");
  a.require_finite("second_best");
  if (a.rows() < 2) throw DimensionError("second_best is undefined for 1x1 matrices");
  const auto g = detail::cost_grid(a);
  auto best = solve(g);
  auto second = second_best_cost(g, best->perm);
  return from_cost(a.semiring(), *second);
}

Rational tvol(const TropMatrix& a) {
  a.require_square("tvol");
  a.require_finite("tvol");
  if (a.rows() < 2) throw DimensionError("tvol is undefined for 1x1 matrices");
  const auto g = detail::cost_grid(a);
  auto best = solve(g);
  auto second = second_best_cost(g, best->perm);
  return abs(Rational(*second - best->cost));
}

AssignmentCertificate certify(const TropMatrix& a) {
  a.require_square("certify");
  if (a.rows() < 2) throw DimensionError("an assignment certificate needs d >= 2");
  const auto g = detail::cost_grid(a);
  auto best = solve(g);
  if (!best) throw PreconditionError("no permutation avoids the tropical zero entries");
  auto second = second_best_cost(g, best->perm);
  AssignmentCertificate cert{from_cost(a.semiring(), best->cost), best->perm,
                             second ? from_cost(a.semiring(), *second) : TropScalar::bottom(), std::nullopt,
                             true};
  if (second) {
    cert.tvol = abs(Rational(*second - best->cost));
    cert.optimum_unique = *cert.tvol > 0;
  }
  return cert;
}

std::string_view to_string(ParityVerdict v) {
  switch (v) {
    case ParityVerdict::SameParity: return "SameParity";
    case ParityVerdict::MixedParity: return "MixedParity";
    case ParityVerdict::Unknown: return "Unknown";
  }
  return "?";
}

std::string_view to_string(ParityMethod m) {
  switch (m) {
    case ParityMethod::UniquenessShortcut: return "UniquenessShortcut";
    case ParityMethod::FullEnumeration: return "FullEnumeration";
    case ParityMethod::Capped: return "Capped";
  }
  return "?";
}

ParityReport parity_report(const TropMatrix& a, std::size_t cap) {
  a.require_square("parity_report");
  const auto g = detail::cost_grid(a);
  auto best = solve(g);
  if (!best) return {ParityVerdict::SameParity, 0, ParityMethod::FullEnumeration};
  if (a.rows() == 1) return {ParityVerdict::SameParity, 1, ParityMethod::UniquenessShortcut};
  auto second = second_best_cost(g, best->perm);
  if (!second || *second > best->cost) return {ParityVerdict::SameParity, 1, ParityMethod::UniquenessShortcut};

  auto optima = enumerate_optima(a, cap);
  const int sign = optima.perms.front().parity();
  for (const auto& p : optima.perms)
    if (p.parity() != sign) return {ParityVerdict::MixedParity, optima.perms.size(), ParityMethod::FullEnumeration};
  if (optima.truncated) return {ParityVerdict::Unknown, optima.perms.size(), ParityMethod::Capped};
  return {ParityVerdict::SameParity, optima.perms.size(), ParityMethod::FullEnumeration};
}

}  // namespace tropiso
