#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "tropiso/errors.hpp"
#include "tropiso/isodiametric.hpp"
#include "tropiso/polytrope.hpp"

using namespace tropiso;

namespace {

TropMatrix example_4x4() {
  const Rational q(1, 4);
  return TropMatrix::from_rationals(Semiring::MinPlus,
                                    {{0, 1, 1, 1}, {1, 0, 5 * q, 3 * q}, {1, 3 * q, 0, 5 * q}, {1, 5 * q, 3 * q, 0}});
}

Point pt(Rational a, Rational b) { return {a, b}; }

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("kleene_star") {
  for (Rational l : {Rational(0), Rational(1, 2), Rational(1), Rational(2)}) CHECK(kleene_star(b_lambda(l)) == b_lambda(l));
  auto a = TropMatrix::from_rationals(Semiring::MinPlus, {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}});
  CHECK(kleene_star(a) == TropMatrix::from_rationals(Semiring::MinPlus, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
  auto neg = TropMatrix::from_rationals(Semiring::MinPlus, {{0, 1}, {-2, 0}});
  try {
    kleene_star(neg);
    FAIL("expected a negative cycle");
  } catch (const NegativeCycleError& e) {
    CHECK(e.weight() == -1);
    CHECK(e.cycle().size() == 2);
  }
  CHECK_THROWS_AS(kleene_star(TropMatrix(Semiring::MaxPlus, 2, 2)), SemiringMismatchError);

  std::mt19937_64 rng(3);
  for (int it = 0; it < 100; ++it) {
    auto b = oracle::random_matrix(rng, Semiring::MinPlus, 4, 4, 0, 6, 2, 0.2);
    auto s = kleene_star(b);
    CHECK(kleene_star(s) == s);
    CHECK(trop_mat_mul(s, s) == s);
    for (std::size_t i = 0; i < 4; ++i) CHECK(s(i, i) == TropScalar(0));
  }
}

TEST_CASE("B(1) is a hexagon") {
  auto p = build_polytrope(b_lambda(1));
  CHECK(p.irredundant.size() == 6);
  std::vector<Point> expect{pt(-1, -1), pt(-1, 0), pt(0, -1), pt(0, 1), pt(1, 0), pt(1, 1)};
  CHECK(p.vertices == expect);
  for (const auto& [f, n] : p.facet_profile) CHECK(n == 2);
  CHECK(genericity_check(p));
  auto svg = render_svg(p);
  CHECK(count(svg, "class=\"generator\"") == 3);
  CHECK(count(svg, "class=\"pseudo-vertex\"") == 3);
  CHECK(svg == render_svg(build_polytrope(b_lambda(1))));
}

TEST_CASE("boundary members B(0) and B(2) are triangles") {
  for (Rational l : {Rational(0), Rational(2)}) {
    auto p = build_polytrope(b_lambda(l));
    CHECK(p.irredundant.size() == 3);
    CHECK(p.vertices.size() == 3);
    CHECK_FALSE(genericity_check(p));
    auto svg = render_svg(p);
    CHECK(count(svg, "class=\"generator\"") == 3);
    CHECK(count(svg, "class=\"pseudo-vertex\"") == 0);
  }
  // Mirror symmetry lambda <-> 2 - lambda swaps the roles of x_2 and x_3.
  auto p0 = build_polytrope(b_lambda(0)), p2 = build_polytrope(b_lambda(2));
  std::set<Point> swapped;
  for (const auto& v : p0.vertices) swapped.insert({v[1], v[0]});
  CHECK(swapped == std::set<Point>(p2.vertices.begin(), p2.vertices.end()));
}

TEST_CASE("4x4 example") {
  auto p = build_polytrope(example_4x4());
  CHECK(p.irredundant.size() == 12);
  CHECK(p.vertices.size() == 20);
  std::multiset<std::size_t> prof;
  std::size_t incidences = 0;
  for (const auto& [f, n] : p.facet_profile) prof.insert(n), incidences += n;
  CHECK(prof == std::multiset<std::size_t>{4, 4, 4, 5, 5, 5, 5, 5, 5, 6, 6, 6});
  CHECK(incidences == 3 * p.vertices.size());
  CHECK(genericity_check(p));
  VertexOptions par;
  par.jobs = 4;
  CHECK(enumerate_vertices(p.hrep, par) == p.vertices);
}

TEST_CASE("facets of near-isodiametric matrices follow the triangle criterion") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto b = sample_isodiametric(4, seed);
    auto facets = irredundant_facets(b);
    std::set<FacetId> got(facets.begin(), facets.end());
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        if (i == j) continue;
        bool strict = true;
        for (std::size_t k = 0; k < 4; ++k)
          if (k != i && k != j) {
            Rational s = b.value(i, j) + b.value(j, k) + b.value(k, i);
            strict = strict && s > 2 && s < 4;
          }
        CHECK(strict == (got.count({i, j}) > 0));
      }
    auto p = build_polytrope(b);
    for (const auto& v : p.vertices)
      for (std::size_t k = 0; k < v.size(); ++k) {
        CHECK(v[k] <= b.value(k + 1, 0));
        CHECK(-v[k] <= b.value(0, k + 1));
      }
    if (genericity_check(p)) {
      std::size_t total = 0;
      for (const auto& [f, n] : p.facet_profile) total += n;
      CHECK(total == 3 * p.vertices.size());
    }
  }
}

TEST_CASE("vertex enumeration guards") {
  HRep open{3, {{1, 0, Rational(1)}}};
  CHECK_THROWS_AS(enumerate_vertices(open), UnboundedError);
  HRep empty{2, {{1, 0, Rational(-1)}, {0, 1, Rational(0)}}};
  CHECK(enumerate_vertices(empty).empty());
  VertexOptions small;
  small.max_dim = 3;
  CHECK_THROWS_AS(enumerate_vertices(hrep_of(example_4x4()), small), PreconditionError);
}

TEST_CASE("membership") {
  auto b = b_lambda(1);
  for (std::size_t j = 0; j < 3; ++j) {
    auto c = b.col(j);
    CHECK(in_tcone(b, c));
    std::vector<Rational> x{c[0].value(), c[1].value(), c[2].value()};
    CHECK(tconv_membership(b, x));
  }
  // Tropical midpoint of the first two columns.
  std::vector<TropScalar> mid(3);
  for (std::size_t i = 0; i < 3; ++i) mid[i] = trop_add(Semiring::MinPlus, b(i, 0), b(i, 1));
  CHECK(in_tcone(b, mid));
  std::vector<Rational> far{3, 1, 1};
  CHECK_FALSE(tconv_membership(b, far));

  std::mt19937_64 rng(17);
  for (int it = 0; it < 300; ++it) {
    auto bb = sample_isodiametric(3 + it % 3, rng);
    std::vector<Rational> x(bb.rows());
    std::vector<TropScalar> xs;
    for (auto& v : x) v = oracle::random_rational(rng, -2, 2, 4), xs.emplace_back(v);
    CHECK(tconv_membership(bb, x) == in_tcone(bb, xs));
  }
  CHECK_THROWS_AS(tconv_membership(b, std::vector<Rational>{1, 2}), DimensionError);
}

TEST_CASE("report and drawing") {
  auto p = build_polytrope(b_lambda(1));
  auto rep = polytrope_report(p);
  CHECK(rep["facets"].size() == 6);
  CHECK(rep["vertices"].size() == 6);
  CHECK(rep["simple"] == true);
  CHECK(rep["profile"]["0,1"] == 2);
  CHECK_THROWS_AS(render_svg(build_polytrope(example_4x4())), DimensionError);
}
