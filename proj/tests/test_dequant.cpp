#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tropiso/dequant.hpp"
#include "tropiso/errors.hpp"
#include "tropiso/transport.hpp"

using namespace tropiso;

namespace {

TropMatrix mp(const std::vector<std::vector<Rational>>& g) { return TropMatrix::from_rationals(Semiring::MaxPlus, g); }

const TropMatrix kWorked = mp({{0, 1, 0}, {0, 0, 1}});

QvolOptions no_check() {
  QvolOptions o;
  o.check_sign_genericity = false;
  return o;
}

std::vector<Rational> p2(long a, long b) { return {Rational(a), Rational(b)}; }

}  // namespace

TEST_CASE("tper") {
  CHECK(tper(mp({{0, -1}, {0, -2}})) == TropScalar(-1));
  TropMatrix diag(Semiring::MaxPlus, 3, 3);
  for (std::size_t i = 0; i < 3; ++i) diag.at(i, i) = TropScalar(static_cast<long>(i) + 1);
  CHECK(tper(diag) == TropScalar(6));
  TropMatrix dead(Semiring::MaxPlus, 2, 2);
  dead.at(0, 0) = TropScalar(1);
  dead.at(0, 1) = TropScalar(1);
  CHECK(tper(dead).is_bottom());
  CHECK_THROWS_AS(tper(TropMatrix(Semiring::MinPlus, 2, 2)), SemiringMismatchError);
}

TEST_CASE("qvol_plus examples") {
  auto a = qvol_plus(mp({{0, 0, 0}, {0, 0, 0}}));
  CHECK(a.value == TropScalar(0));
  CHECK(a.sign_generic_bar == ParityVerdict::MixedParity);
  CHECK(qvol_plus(mp({{0, -1, -2}, {0, -2, -4}})).value == TropScalar(-1));
  auto w = qvol_plus(kWorked);
  CHECK(w.value == TropScalar(2));
  CHECK(w.witness_columns == std::vector<std::size_t>{1, 2});
  CHECK(w.witness_perm->is_identity());
  CHECK(w.sign_generic_bar == ParityVerdict::SameParity);
  auto lp = qvol_plus(kWorked, QvolMethod::TransportLP);
  CHECK(lp.value == TropScalar(2));
  CHECK(lp.witness_columns == std::vector<std::size_t>{1, 2});
  CHECK_THROWS_AS(qvol_plus(mp({{0}, {0}})), DimensionError);
  TropMatrix blocked(Semiring::MaxPlus, 2, 3);
  blocked.at(0, 0) = TropScalar(1);
  auto none = qvol_plus(blocked, QvolMethod::BruteForce, no_check());
  CHECK(none.value.is_bottom());
  CHECK(none.witness_columns.empty());
  CHECK(qvol_plus(blocked, QvolMethod::TransportLP, no_check()).value.is_bottom());
}

TEST_CASE("qvol_plus methods agree with the injective-map oracle") {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 600; ++it) {
    std::size_t d = 1 + it % 4, m = d + static_cast<std::size_t>(rng() % (10 - d));
    auto a = oracle::random_matrix(rng, Semiring::MaxPlus, d, m, -4, 4, it % 2 ? 1 : 3, 0.25);
    auto bf = qvol_plus(a, QvolMethod::BruteForce, no_check());
    auto lp = qvol_plus(a, QvolMethod::TransportLP, no_check());
    CHECK(bf.value == oracle::qvol_plus(a));
    CHECK(lp.value == bf.value);
    if (bf.value.is_finite()) {
      CHECK(tper(a.select_columns(bf.witness_columns)) == bf.value);
      CHECK(tper(a.select_columns(lp.witness_columns)) == lp.value);
      CHECK(bf.witness_perm->weight_of(a.select_columns(bf.witness_columns)) == bf.value);
      CHECK(lp.witness_perm->weight_of(a.select_columns(lp.witness_columns)) == lp.value);
    }
  }
}

TEST_CASE("qvol_plus monotonicity and shifts") {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 200; ++it) {
    std::size_t d = 1 + it % 3, m = d + it % 4;
    auto a = oracle::random_matrix(rng, Semiring::MaxPlus, d, m, -3, 3, 2);
    auto extra = oracle::random_matrix(rng, Semiring::MaxPlus, d, 1, -3, 3, 2);
    auto q = qvol_plus(a, QvolMethod::BruteForce, no_check()).value;
    auto q2 = qvol_plus(concat_columns(a, extra), QvolMethod::BruteForce, no_check()).value;
    CHECK_FALSE(trop_better(Semiring::MaxPlus, q, q2));
    Rational c = oracle::random_rational(rng, -2, 2, 3);
    std::vector<Rational> rows(d, c), cols(m, Rational(0));
    auto shifted = qvol_plus(translate(a, rows, cols), QvolMethod::BruteForce, no_check()).value;
    CHECK(shifted.value() == q.value() + c * static_cast<long>(d));
  }
}

TEST_CASE("transport solver") {
  std::vector<std::vector<std::optional<Rational>>> w{{Rational(1), Rational(5)}, {Rational(4), std::nullopt}};
  auto s = max_weight_transport(w);
  REQUIRE(s.has_value());
  CHECK(s->value == 9);
  CHECK(s->arcs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}});
  std::vector<std::vector<std::optional<Rational>>> dead{{Rational(1), std::nullopt}, {Rational(2), std::nullopt}};
  CHECK_FALSE(max_weight_transport(dead).has_value());
}

TEST_CASE("sign_generic") {
  auto r = sign_generic(kWorked, true);
  CHECK(r.verdict == ParityVerdict::SameParity);
  CHECK(r.submatrices_checked == 1);
  auto z = sign_generic(mp({{0, 0}, {0, 0}}), false);
  CHECK(z.verdict == ParityVerdict::MixedParity);
  CHECK(z.witness_columns == std::vector<std::size_t>{0, 1});
  CHECK(sign_generic(mp({{0, 0, 0}, {0, 0, 0}}), true).verdict == ParityVerdict::MixedParity);
  // Tall barred matrix: maximal square submatrices are row subsets.
  auto tall = sign_generic(mp({{0, 5}, {1, 0}}), true);
  CHECK(tall.submatrices_checked == 3);
  CHECK(tall.verdict == ParityVerdict::SameParity);
  CHECK(sign_generic(mp({{0, 0, 0, 0}, {0, 0, 0, 0}}), true, 1).verdict == ParityVerdict::Unknown);

  std::mt19937_64 rng(12);
  for (int it = 0; it < 300; ++it) {
    std::size_t d = 1 + it % 3, m = d + it % 3;
    auto a = oracle::random_matrix(rng, Semiring::MaxPlus, d, m, -1, 1, 1, 0.1);
    CHECK((sign_generic(a, true).verdict == ParityVerdict::SameParity) == oracle::bar_sign_generic(a));
  }
}

TEST_CASE("qvol") {
  CHECK(qvol(kWorked) == TropScalar(2));
  CHECK_THROWS_AS(qvol(mp({{0, 0}, {0, 0}})), NotSignGenericError);
  // [[0,5],[0,0]]: rows {bar, second} of the barred matrix give an all-zero block.
  CHECK_THROWS_AS(qvol(mp({{0, 5}, {0, 0}})), NotSignGenericError);
  CHECK(qvol(mp({{0, 5}, {1, 0}})) == TropScalar(6));
  try {
    qvol(mp({{0, 0, 0, 0}, {0, 0, 0, 0}}), 1);
    FAIL("expected parity-unknown");
  } catch (const PreconditionError& e) {
    CHECK(e.kind() == "parity-unknown");
  }
}

TEST_CASE("tvol of the barred square matrix is a sufficient condition only") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 200; ++it) {
    std::size_t d = 1 + it % 3;
    auto a = oracle::random_matrix(rng, Semiring::MaxPlus, d, d + 1, -3, 3, 1);
    if (tvol(bar(a)) > 0) CHECK(sign_generic(a, true).verdict == ParityVerdict::SameParity);
  }
  // Identity and a 3-cycle are both optimal: tvol 0, yet one parity.
  auto a = mp({{-9, 0, 9}, {0, -9, 9}});
  CHECK(tvol(bar(a)) == 0);
  CHECK(sign_generic(a, true).verdict == ParityVerdict::SameParity);
}

TEST_CASE("lift_eval") {
  LiftSpec s{mp({{0, 1}, {1, 0}}), {{1, 1}, {1, 1}}, Rational(1), {}};
  CHECK(lift_eval(s, 10) == std::vector<std::vector<double>>{{1, 10}, {10, 1}});
  s.boost = 6;
  s.boosted_cells = {{0, 0}, {1, 1}};
  CHECK(lift_eval(s, 10) == std::vector<std::vector<double>>{{6, 10}, {10, 6}});
  CHECK_THROWS_AS(lift_eval(s, 1.0), PreconditionError);
  auto def = default_lift(kWorked);
  CHECK(def.boost == 6);
  CHECK(def.boosted_cells == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});
  s.boost = 1;
  for (double t : {1e3, 1e6, 1e9}) {
    auto v = lift_eval(s, t);
    CHECK(std::log(v[0][1]) / std::log(t) == doctest::Approx(1.0));
  }
  TropMatrix with_bottom(Semiring::MaxPlus, 1, 2);
  with_bottom.at(0, 0) = TropScalar(1);
  LiftSpec b{with_bottom, {{1, 1}}, Rational(1), {}};
  CHECK(lift_eval(b, 2)[0][1] == 0.0);
}

TEST_CASE("hull_volume") {
  CHECK(hull_volume({p2(0, 0), p2(1, 0), p2(0, 1), p2(1, 1)}).volume == 1);
  CHECK(hull_volume({p2(0, 0), p2(1, 0), p2(0, 1), p2(1, 1)}).alpha == 2);
  auto tri = hull_volume({p2(0, 0), p2(1, 0), p2(0, 1)});
  CHECK(tri.volume == Rational(1, 2));
  CHECK(tri.alpha == 1);
  std::vector<std::vector<Rational>> tet{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto t = hull_volume(tet);
  CHECK(t.volume == Rational(1, 6));
  CHECK(t.alpha == 1);
  std::vector<std::vector<Rational>> cube;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) cube.push_back({x, y, z});
  cube.push_back({Rational(1, 2), Rational(1, 2), Rational(1, 2)});
  CHECK(hull_volume(cube).volume == 1);
  CHECK(hull_volume({p2(0, 0), p2(1, 1), p2(2, 2)}).volume == 0);
  CHECK(hull_volume({p2(0, 0), p2(1, 1), p2(2, 2)}).alpha == 0);
  std::vector<std::vector<Rational>> flat{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  CHECK(hull_volume(flat).volume == 0);
  CHECK(hull_volume({{Rational(3)}, {Rational(-1)}}).volume == 4);
  CHECK_THROWS_AS(hull_volume({{1, 2, 3, 4}}), DimensionError);

  std::mt19937_64 rng(6);
  for (int it = 0; it < 200; ++it) {
    std::vector<std::vector<Rational>> pts;
    std::size_t n = 3 + it % 8;
    for (std::size_t k = 0; k < n; ++k) pts.push_back({oracle::random_rational(rng, -4, 4, 2), oracle::random_rational(rng, -4, 4, 2)});
    auto hv = hull_volume(pts);
    CHECK(hv.volume == oracle::hull_area(pts));
    if (hv.volume > 0) CHECK(hv.alpha + 2 == convex_hull_2d(pts).size());
  }
  // 3D: volume of a random polytope equals the sum over a fan from any interior point.
  for (int it = 0; it < 50; ++it) {
    std::vector<std::vector<Rational>> pts{{0, 0, 0}, {4, 0, 0}, {0, 4, 0}, {0, 0, 4}};
    for (int k = 0; k < 4; ++k) {
      Rational a = oracle::random_rational(rng, 0, 1, 8), b = oracle::random_rational(rng, 0, 1, 8);
      if (a + b > 1) continue;
      pts.push_back({4 * a, 4 * b, 4 * (1 - a - b)});  // on the slanted face
    }
    CHECK(hull_volume(pts).volume == Rational(64, 6));
  }
}

TEST_CASE("dequant_slope") {
  auto r = dequant_slope(kWorked);
  CHECK(r.samples.size() == 5);
  CHECK(std::abs(r.slope - 2.0) < 0.05);
  // With the boost N = 6 the lifted points are (1,1), (6t,1), (1,6t).
  for (const auto& s : r.samples) CHECK(s.volume == doctest::Approx((6 * s.t - 1) * (6 * s.t - 1) / 2).epsilon(1e-12));
  for (std::size_t k = 1; k < r.samples.size(); ++k)
    CHECK(std::abs(r.samples[k].log_ratio - 2) <= std::abs(r.samples[k - 1].log_ratio - 2));

  CHECK_THROWS_AS(dequant_slope(mp({{1, 1}, {2, 2}})), DegenerateHullError);
  CHECK_THROWS_AS(dequant_slope(mp({{0, 0, 0}, {0, 0, 0}})), NotSignGenericError);
  CHECK_THROWS_AS(dequant_slope(TropMatrix(Semiring::MaxPlus, 4, 5)), DimensionError);

  // Adding c to every exponent moves the slope to the qvol of the shifted matrix.
  std::vector<Rational> rows{Rational(1), Rational(1)}, cols{0, 0, 0};
  auto shifted = translate(kWorked, rows, cols);
  auto rs = dequant_slope(shifted);
  CHECK(std::abs(rs.slope - to_double(qvol(shifted).value())) < 0.05);
  CHECK(qvol(shifted) == TropScalar(4));

  auto grid = dequant_slope(kWorked, {1e3, 1e9});
  CHECK(grid.samples.size() == 2);
  CHECK(std::abs(grid.slope - 2.0) < 1e-3);
}

TEST_CASE("volume_bound_check") {
  auto r = volume_bound_check({{1, 3, 1}, {1, 1, 3}});
  CHECK(r.volume == 2);
  CHECK(r.alpha == 1);
  CHECK(r.bound == doctest::Approx(27.0));
  CHECK(r.holds);
  auto c = volume_bound_check({{0, 1, 2}, {0, 1, 2}});
  CHECK(c.volume == 0);
  CHECK(c.holds);
  CHECK_THROWS_AS(volume_bound_check({{1, -1}, {1, 1}}), PreconditionError);
  auto logs = log_matrix({{0, 1}});
  CHECK(logs(0, 0).is_bottom());
  CHECK(logs(0, 1) == TropScalar(0));

  std::mt19937_64 rng(10);
  for (int it = 0; it < 200; ++it) {
    std::size_t d = 2 + it % 2, m = 1 + it % 8;
    OrdinaryMatrix a(d, std::vector<Rational>(m));
    for (auto& row : a)
      for (auto& x : row) x = rng() % 5 == 0 ? Rational(0) : oracle::random_rational(rng, 0, 10, 3);
    CHECK(volume_bound_check(a).holds);
  }
}

TEST_CASE("Cauchy-Binet inequality and its sign-generic equality case") {
  // Both rows of B prefer column 0 of C: the best map is not injective.
  auto b = mp({{0, -10}, {0, -10}});
  auto c = mp({{0, 0}, {-10, -10}});
  auto sides = cauchy_binet_sides(b, c, {0, 1});
  CHECK(sides.lhs == TropScalar(0));
  CHECK(sides.rhs == TropScalar(-20));
  CHECK_FALSE(cauchy_binet_check(b, c, {0, 1}));

  CHECK(cauchy_binet_check(mp({{1, 2, 3}}), mp({{0, 1}, {2, 0}, {1, 1}}), {1}));
  auto id = TropMatrix::identity(Semiring::MaxPlus, 3);
  auto bb = mp({{1, 4, 2}, {0, 3, 5}});
  auto cb = cauchy_binet_sides(bb, id, {0, 2});
  CHECK(cb.lhs == tper(bb.select_columns(std::vector<std::size_t>{0, 2})));
  CHECK(cb.rhs == cb.lhs);
  CHECK_THROWS_AS(cauchy_binet_check(bb, mp({{1}}), {0, 1}), DimensionError);

  std::mt19937_64 rng(13);
  int generic = 0;
  for (int it = 0; it < 400; ++it) {
    std::size_t d = 1 + it % 3, p = d + rng() % (6 - d), m = d + rng() % (6 - d);
    auto B = oracle::random_matrix(rng, Semiring::MaxPlus, d, p, -5, 5, 4);
    auto C = oracle::random_matrix(rng, Semiring::MaxPlus, p, m, -5, 5, 4);
    std::vector<std::size_t> cols(m);
    std::iota(cols.begin(), cols.end(), 0);
    std::shuffle(cols.begin(), cols.end(), rng);
    cols.resize(d);
    std::sort(cols.begin(), cols.end());
    auto s = cauchy_binet_sides(B, C, cols);
    CHECK_FALSE(trop_better(Semiring::MaxPlus, s.rhs, s.lhs));
    if (oracle::optimal_parities(trop_mat_mul(B, C).select_columns(cols)).size() == 1) {
      ++generic;
      CHECK(s.lhs == s.rhs);
    }
  }
  CHECK(generic > 100);
}

TEST_CASE("idempotent measure check") {
  auto one_col = mp({{-5}, {-5}});
  CHECK(qvol_plus(concat_columns(kWorked, one_col), QvolMethod::BruteForce, no_check()).value == TropScalar(2));
  CHECK(idempotent_measure_check(kWorked, one_col) == MeasureCheck::Equal);
  CHECK(idempotent_measure_check(kWorked, kWorked) == MeasureCheck::Skip);
  // A mixed column pair beats both halves although the concatenation is generic.
  auto a = mp({{3, -4}, {-1, -2}});
  auto b = mp({{4, -2, -3}, {4, 0, -4}});
  CHECK(sign_generic(concat_columns(a, b), true).verdict == ParityVerdict::SameParity);
  CHECK(qvol_plus(a, QvolMethod::BruteForce, no_check()).value == TropScalar(1));
  CHECK(qvol_plus(b, QvolMethod::BruteForce, no_check()).value == TropScalar(4));
  CHECK(qvol_plus(concat_columns(a, b), QvolMethod::BruteForce, no_check()).value == TropScalar(7));
  CHECK(idempotent_measure_check(a, b) == MeasureCheck::NotEqual);
}
