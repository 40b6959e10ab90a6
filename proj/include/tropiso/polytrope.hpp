#pragma once

// Kleene stars of min-plus matrices and the weighted digraph polyhedra
// P(B) = { x : x_i - x_j <= b_ij } they define, viewed in the chart
// x_1 = 0 of R^d / R·1.

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tropiso/errors.hpp"
#include "tropiso/matrix.hpp"

namespace tropiso {

class NegativeCycleError : public Error {
 public:
  NegativeCycleError(std::vector<std::size_t> cycle, Rational weight);

  /// Closed walk i0 -> i1 -> ... -> i0 (first node not repeated).
  const std::vector<std::size_t>& cycle() const { return cycle_; }
  const Rational& weight() const { return weight_; }

 private:
  std::vector<std::size_t> cycle_;
  Rational weight_;
};

/// All-pairs shortest-path closure I ⊕ B ⊕ B^2 ⊕ … (Floyd–Warshall) of a
/// min-plus matrix. Throws NegativeCycleError when the closure diverges.
TropMatrix kleene_star(const TropMatrix& b);

/// x_i - x_j <= bound.
struct DifferenceConstraint {
  std::size_t i;
  std::size_t j;
  Rational bound;
  friend bool operator==(const DifferenceConstraint&, const DifferenceConstraint&) = default;
};

struct HRep {
  std::size_t dim;  // d; points live in R^(d-1) after fixing x_1 = 0
  std::vector<DifferenceConstraint> rows;
};

/// (x_2 - x_1, …, x_d - x_1).
using Point = std::vector<Rational>;
using FacetId = std::pair<std::size_t, std::size_t>;

/// One inequality per finite off-diagonal entry, row-major order.
HRep hrep_of(const TropMatrix& star);

/// Does `p` satisfy the constraint with equality?
bool is_tight(const DifferenceConstraint& c, const Point& p);
bool satisfies(const DifferenceConstraint& c, const Point& p);

struct VertexOptions {
  std::size_t max_dim = 6;  // guard against the (d-1)-subset explosion
  unsigned jobs = 1;
};

class UnboundedError : public Error {
 public:
  explicit UnboundedError(const std::string& m) : Error("unbounded", m) {}
};

/// Solves every (d-1)-subset of the inequalities exactly, keeps feasible
/// solutions, removes duplicates. Sorted lexicographically; independent of
/// `jobs`. Empty for an infeasible system.
std::vector<Point> enumerate_vertices(const HRep& hrep, const VertexOptions& options = {});

/// Pairs (i,j) with star_ij < star_ik + star_kj for every k not in {i,j}.
std::vector<FacetId> irredundant_facets(const TropMatrix& star);

struct Polytrope {
  TropMatrix source;
  TropMatrix star;
  HRep hrep;
  std::vector<FacetId> irredundant;
  std::vector<Point> vertices;
  std::map<FacetId, std::size_t> facet_profile;
};

Polytrope build_polytrope(const TropMatrix& b, const VertexOptions& options = {});

/// Indices into p.vertices of the vertices tight on x_i - x_j <= star_ij.
std::vector<std::size_t> vertices_on_facet(const Polytrope& p, const FacetId& f);

/// Number of vertices on each irredundant facet.
std::map<FacetId, std::size_t> facet_profile(const Polytrope& p);

/// Every vertex lies on exactly d-1 of the defining inequalities, so the
/// polytope is simple and no redundant inequality touches a vertex.
bool genericity_check(const Polytrope& p);

/// Min-plus residuation test: x ∈ tcone(M) iff M ⊙ (M# x) = x with
/// (M# x)_k = max_i (x_i - m_ik).
bool in_tcone(const TropMatrix& m, std::span<const TropScalar> x);

/// Membership of x (length d) in P(B) modulo R·1, via the inequalities of B*.
/// Requires B near-isodiametric, where P(B*) = tcone(B).
bool tconv_membership(const TropMatrix& b, std::span<const Rational> x);

/// Columns of the star that are not in the min-tropical cone of the others.
std::vector<std::size_t> nonredundant_generators(const TropMatrix& star);

/// Point of R^(d-1) for a vector of R^d: (x_2 - x_1, …).
Point project(std::span<const TropScalar> x);

/// SVG 1.1 drawing of a planar polytrope (d = 3): filled polygon, red
/// markers on the non-redundant generators, white markers on the other
/// vertices.
std::string render_svg(const Polytrope& p);

/// {"facets": [[i,j],…], "vertices": [[…]], "profile": {"i,j": n}, "simple": bool}
/// with 0-based indices and exact rational strings.
nlohmann::json polytrope_report(const Polytrope& p);

}  // namespace tropiso
