#include <algorithm>
#include <set>
#include <sstream>

#include "tropiso/assignment.hpp"
#include "tropiso/cli.hpp"
#include "tropiso/dequant.hpp"
#include "tropiso/isodiametric.hpp"
#include "tropiso/polytrope.hpp"

namespace tropiso::cli {

namespace {

TropMatrix unit_matrix(std::size_t d) {
  TropMatrix u(Semiring::MaxPlus, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) u.at(i, j) = TropScalar(i == j ? 1 : 0);
  return u;
}

TropMatrix generic_4x4() {
  const Rational q(1, 4);
  return TropMatrix::from_rationals(Semiring::MinPlus, {{0, 1, 1, 1},
                                                        {1, 0, 5 * q, 3 * q},
                                                        {1, 3 * q, 0, 5 * q},
                                                        {1, 5 * q, 3 * q, 0}});
}

std::vector<Rational> lambdas() { return {Rational(0), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)}; }

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  return os.str();
}

std::string distinct_values(const std::vector<Rational>& v) {
  std::set<Rational> s(v.begin(), v.end());
  std::vector<std::string> out;
  for (const auto& x : s) out.push_back(format_rational(x));
  return join(out);
}

std::size_t count_substr(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + needle.size())) ++n;
  return n;
}

// Every vertex of the polygon is one of the min-tropical generators, so the
// max-tropical generators (its pseudo-vertices) coincide with them.
bool generators_agree(const Polytrope& p) {
  std::set<Point> red;
  for (std::size_t j : nonredundant_generators(p.star)) red.insert(project(p.star.col(j)));
  return std::all_of(p.vertices.begin(), p.vertices.end(), [&](const Point& v) { return red.count(v) > 0; });
}

}  // namespace

std::vector<SuiteRow> reference_suite(unsigned jobs) {
  std::vector<SuiteRow> rows;
  auto add = [&](std::string name, std::string expected, std::string observed) {
    bool pass = expected == observed;
    rows.push_back({std::move(name), std::move(expected), std::move(observed), pass});
  };

  {
    std::vector<Rational> diam, vol;
    for (std::size_t d = 2; d <= 10; ++d) {
      diam.push_back(tdiam(unit_matrix(d)));
      vol.push_back(tvol(unit_matrix(d)));
    }
    add("unit matrix tdiam, d=2..10", "2", distinct_values(diam));
    add("unit matrix tvol, d=2..10", "2", distinct_values(vol));
  }

  {
    TropMatrix b1 = b_lambda(1);
    add("B(1) (x) B(1) = B(1)", "true", trop_mat_mul(b1, b1) == b1 ? "true" : "false");
  }

  {
    std::vector<std::string> cls, near, star;
    for (const auto& l : lambdas()) {
      TropMatrix b = b_lambda(l);
      cls.emplace_back(to_string(check_conditions(b, StandardVariant::MinStandard).classification));
      near.push_back(is_near_isodiametric(b) ? "true" : "false");
      star.push_back(kleene_star(b) == b ? "true" : "false");
    }
    add("B(lambda) classification, lambda=0,1/2,1,3/2,2", "isodiametric,isodiametric,isodiametric,isodiametric,isodiametric",
        join(cls));
    add("B(lambda) near-isodiametric", "true,true,true,true,true", join(near));
    add("Kleene star fixes B(lambda)", "true,true,true,true,true", join(star));
  }

  {
    bool shape = true;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      TropMatrix s = sample_isodiametric(3, seed);
      const Rational& l = s.value(1, 2);
      shape = shape && l >= 0 && l <= 2 && s == b_lambda(l);
    }
    add("3x3 samples equal B(lambda), seeds 1..20", "true", shape ? "true" : "false");
    add("free parameters of Iso(3), Iso(5)", "1,6",
        std::to_string(iso_free_parameters(3)) + "," + std::to_string(iso_free_parameters(5)));
  }

  VertexOptions vopts;
  vopts.jobs = jobs;
  {
    Polytrope p = build_polytrope(b_lambda(1), vopts);
    add("B(1) polygon facets,vertices", "6,6",
        std::to_string(p.irredundant.size()) + "," + std::to_string(p.vertices.size()));
    std::string svg = render_svg(p);
    add("B(1) drawing red,white markers", "3,3",
        std::to_string(count_substr(svg, "class=\"generator\"")) + "," +
            std::to_string(count_substr(svg, "class=\"pseudo-vertex\"")));
    std::vector<std::string> agree;
    for (const Rational& l : {Rational(0), Rational(2)})
      agree.push_back(generators_agree(build_polytrope(b_lambda(l), vopts)) ? "true" : "false");
    add("B(0), B(2): min and max generators agree", "true,true", join(agree));
  }

  {
    Polytrope p = build_polytrope(generic_4x4(), vopts);
    add("4x4 isodiametric example: facets", "12", std::to_string(p.irredundant.size()));
    std::vector<std::size_t> prof;
    for (const auto& [f, n] : p.facet_profile) prof.push_back(n);
    std::sort(prof.begin(), prof.end());
    add("4x4 isodiametric example: facet profile", "4,4,4,5,5,5,5,5,5,6,6,6", join(prof));
    bool adjacent = false;
    std::vector<std::vector<std::size_t>> hex;
    for (const auto& [f, n] : p.facet_profile)
      if (n == 6) hex.push_back(vertices_on_facet(p, f));
    for (std::size_t a = 0; a < hex.size(); ++a)
      for (std::size_t b = a + 1; b < hex.size(); ++b) {
        std::vector<std::size_t> common;
        std::set_intersection(hex[a].begin(), hex[a].end(), hex[b].begin(), hex[b].end(), std::back_inserter(common));
        adjacent = adjacent || common.size() >= 2;
      }
    add("4x4 isodiametric example: adjacent hexagons", "false", adjacent ? "true" : "false");
  }

  {
    QvolOptions o;
    o.check_sign_genericity = false;
    TropMatrix a = TropMatrix::from_rationals(Semiring::MaxPlus, {{0, 0, 0}, {0, 0, 0}});
    TropMatrix b = TropMatrix::from_rationals(Semiring::MaxPlus, {{0, -1, -2}, {0, -2, -4}});
    add("qvol+ of the 2x3 zero matrix", "0", format_scalar(Semiring::MaxPlus, qvol_plus(a, QvolMethod::BruteForce, o).value));
    add("qvol+ of [[0,-1,-2],[0,-2,-4]]", "-1",
        format_scalar(Semiring::MaxPlus, qvol_plus(b, QvolMethod::BruteForce, o).value));
  }
  return rows;
}

}  // namespace tropiso::cli
