#include "tropiso/polytrope.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "tropiso/isodiametric.hpp"

namespace tropiso {

namespace {

std::string cycle_message(const std::vector<std::size_t>& cycle, const Rational& weight) {
  std::string s = "negative cycle";
  for (std::size_t k = 0; k < cycle.size(); ++k) s += (k ? " -> " : " ") + std::to_string(cycle[k]);
  s += " -> " + std::to_string(cycle.front()) + " of weight " + format_rational(weight);
  return s;
}

// Bellman–Ford from a virtual source joined to every node with weight 0.
// Returns a negative cycle if one exists.
std::optional<std::vector<std::size_t>> find_negative_cycle(const TropMatrix& b) {
  const std::size_t n = b.rows();
  std::vector<Rational> dist(n, Rational(0));
  std::vector<std::size_t> parent(n, n);
  std::size_t last = n;
  for (std::size_t iter = 0; iter < n; ++iter) {
    last = n;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (b(i, j).is_bottom()) continue;
        Rational cand = dist[i] + b.value(i, j);
        if (cand < dist[j]) {
          dist[j] = std::move(cand);
          parent[j] = i;
          last = j;
        }
      }
    if (last == n) return std::nullopt;
  }
  // `last` was relaxed in round n, so walking n parents lands on the cycle.
  std::size_t v = last;
  for (std::size_t k = 0; k < n; ++k) v = parent[v];
  std::vector<std::size_t> cycle;
  for (std::size_t u = v;; u = parent[u]) {
    cycle.push_back(u);
    if (parent[u] == v) break;
  }
  // Parents point backwards along edges; reverse to follow the arcs.
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

// Exact solve of a square system; nullopt when singular.
std::optional<Point> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  Point y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = rhs[i] / a[i][i];
  return y;
}

// x_i in the chart x_1 = 0.
Rational coord(const Point& p, std::size_t i) { return i == 0 ? Rational(0) : p[i - 1]; }

// Shortest-path closure of the constraint graph; nullopt on a negative cycle.
std::optional<std::vector<std::vector<std::optional<Rational>>>> closure(const HRep& h) {
  const std::size_t d = h.dim;
  std::vector<std::vector<std::optional<Rational>>> dist(d, std::vector<std::optional<Rational>>(d));
  for (std::size_t i = 0; i < d; ++i) dist[i][i] = Rational(0);
  for (const auto& c : h.rows)
    if (!dist[c.i][c.j] || c.bound < *dist[c.i][c.j]) dist[c.i][c.j] = c.bound;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (dist[i][k] && dist[k][j]) {
          Rational via = *dist[i][k] + *dist[k][j];
          if (!dist[i][j] || via < *dist[i][j]) dist[i][j] = std::move(via);
        }
  for (std::size_t i = 0; i < d; ++i)
    if (*dist[i][i] < 0) return std::nullopt;
  return dist;
}

std::string fixed(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << (v == 0 ? 0.0 : v);
  return os.str();
}

}  // namespace

NegativeCycleError::NegativeCycleError(std::vector<std::size_t> cycle, Rational weight)
    : Error("negative-cycle", cycle_message(cycle, weight)), cycle_(std::move(cycle)), weight_(std::move(weight)) {}

TropMatrix kleene_star(const TropMatrix& b) {
  b.require_square("kleene_star");
  if (b.semiring() != Semiring::MinPlus) throw SemiringMismatchError("kleene_star expects a min-plus matrix");
  if (auto cycle = find_negative_cycle(b)) {
    Rational w = 0;
    for (std::size_t k = 0; k < cycle->size(); ++k) w += b.value((*cycle)[k], (*cycle)[(k + 1) % cycle->size()]);
    throw NegativeCycleError(std::move(*cycle), std::move(w));
  }
  const std::size_t n = b.rows();
  TropMatrix s = b;
  for (std::size_t i = 0; i < n; ++i) s.at(i, i) = TropScalar(0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (s(i, k).is_bottom()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        TropScalar via = trop_mul(s(i, k), s(k, j));
        if (trop_better(Semiring::MinPlus, via, s(i, j))) s.at(i, j) = std::move(via);
      }
    }
  return s;
}

HRep hrep_of(const TropMatrix& star) {
  star.require_square("hrep_of");
  HRep h{star.rows(), {}};
  for (std::size_t i = 0; i < star.rows(); ++i)
    for (std::size_t j = 0; j < star.cols(); ++j)
      if (i != j && star(i, j).is_finite()) h.rows.push_back({i, j, star.value(i, j)});
  return h;
}

bool is_tight(const DifferenceConstraint& c, const Point& p) { return coord(p, c.i) - coord(p, c.j) == c.bound; }

bool satisfies(const DifferenceConstraint& c, const Point& p) { return coord(p, c.i) - coord(p, c.j) <= c.bound; }

std::vector<Point> enumerate_vertices(const HRep& hrep, const VertexOptions& options) {
  const std::size_t d = hrep.dim;
  if (d < 2) throw DimensionError("enumerate_vertices needs d >= 2");
  if (d > options.max_dim)
    throw PreconditionError("enumerate_vertices: d = " + std::to_string(d) + " exceeds the limit " +
                            std::to_string(options.max_dim));
  for (const auto& c : hrep.rows)
    if (c.i >= d || c.j >= d || c.i == c.j) throw DimensionError("malformed difference constraint");

  auto dist = closure(hrep);
  if (!dist) return {};
  for (std::size_t k = 1; k < d; ++k)
    if (!(*dist)[k][0] || !(*dist)[0][k])
      throw UnboundedError("coordinate x_" + std::to_string(k) + " - x_0 is unbounded");

  const std::size_t n = d - 1;
  const std::size_t m = hrep.rows.size();
  if (m < n) return {};

  // Subsets are ranked in lexicographic order; worker t takes ranks ≡ t (mod jobs).
  const unsigned jobs = std::max(1u, options.jobs);
  std::vector<std::set<Point>> found(jobs);
  auto work = [&](unsigned t) {
    std::vector<std::size_t> idx(n);
    for (std::size_t k = 0; k < n; ++k) idx[k] = k;
    for (std::size_t rank = 0;; ++rank) {
      if (rank % jobs == t) {
        std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n, Rational(0)));
        std::vector<Rational> rhs(n);
        for (std::size_t r = 0; r < n; ++r) {
          const auto& c = hrep.rows[idx[r]];
          if (c.i) a[r][c.i - 1] += 1;
          if (c.j) a[r][c.j - 1] -= 1;
          rhs[r] = c.bound;
        }
        if (auto y = solve_exact(std::move(a), std::move(rhs))) {
          bool feasible = std::all_of(hrep.rows.begin(), hrep.rows.end(),
                                      [&](const DifferenceConstraint& c) { return satisfies(c, *y); });
          if (feasible) found[t].insert(std::move(*y));
        }
      }
      std::size_t k = n;
      while (k > 0 && idx[k - 1] == m - n + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t r = k; r < n; ++r) idx[r] = idx[r - 1] + 1;
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  std::set<Point> all;
  for (auto& s : found) all.merge(s);
  std::vector<Point> out(all.begin(), all.end());

  // A bounded polytope attains max/min of each coordinate at a vertex.
  for (std::size_t k = 1; k < d; ++k) {
    const Rational hi = *(*dist)[k][0], lo = -*(*dist)[0][k];
    bool has_hi = false, has_lo = false;
    for (const auto& p : out) {
      has_hi = has_hi || p[k - 1] == hi;
      has_lo = has_lo || p[k - 1] == lo;
    }
    if (!has_hi || !has_lo)
      throw UnboundedError("vertex set misses the extreme value of coordinate " + std::to_string(k));
  }
  return out;
}

std::vector<FacetId> irredundant_facets(const TropMatrix& star) {
  star.require_square("irredundant_facets");
  const std::size_t d = star.rows();
  std::vector<FacetId> out;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j || star(i, j).is_bottom()) continue;
      bool facet = true;
      for (std::size_t k = 0; k < d && facet; ++k) {
        if (k == i || k == j) continue;
        TropScalar via = trop_mul(star(i, k), star(k, j));
        facet = via.is_bottom() || star.value(i, j) < via.value();
      }
      if (facet) out.emplace_back(i, j);
    }
  return out;
}

Polytrope build_polytrope(const TropMatrix& b, const VertexOptions& options) {
  TropMatrix star = kleene_star(b);
  HRep h = hrep_of(star);
  Polytrope p{b, star, h, irredundant_facets(star), enumerate_vertices(h, options), {}};
  p.facet_profile = facet_profile(p);
  return p;
}

std::vector<std::size_t> vertices_on_facet(const Polytrope& p, const FacetId& f) {
  DifferenceConstraint c{f.first, f.second, p.star.value(f.first, f.second)};
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < p.vertices.size(); ++k)
    if (is_tight(c, p.vertices[k])) out.push_back(k);
  return out;
}

std::map<FacetId, std::size_t> facet_profile(const Polytrope& p) {
  std::map<FacetId, std::size_t> prof;
  for (const auto& f : p.irredundant) prof[f] = vertices_on_facet(p, f).size();
  return prof;
}

bool genericity_check(const Polytrope& p) {
  if (p.vertices.empty()) return false;
  const std::size_t want = p.hrep.dim - 1;
  for (const auto& v : p.vertices) {
    std::size_t tight = static_cast<std::size_t>(std::count_if(
        p.hrep.rows.begin(), p.hrep.rows.end(), [&](const DifferenceConstraint& c) { return is_tight(c, v); }));
    if (tight != want) return false;
  }
  return true;
}

bool in_tcone(const TropMatrix& m, std::span<const TropScalar> x) {
  if (m.semiring() != Semiring::MinPlus) throw SemiringMismatchError("in_tcone expects a min-plus matrix");
  if (x.size() != m.rows()) throw DimensionError("in_tcone: point has the wrong length");
  std::vector<TropScalar> lambda(m.cols());
  for (std::size_t k = 0; k < m.cols(); ++k) {
    std::optional<Rational> best;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (m(i, k).is_bottom()) continue;
      Rational c = x[i].value() - m.value(i, k);
      if (!best || c > *best) best = std::move(c);
    }
    if (best) lambda[k] = TropScalar(*best);
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    TropScalar acc;
    for (std::size_t k = 0; k < m.cols(); ++k) acc = trop_add(Semiring::MinPlus, acc, trop_mul(m(i, k), lambda[k]));
    if (acc != x[i]) return false;
  }
  return true;
}

bool tconv_membership(const TropMatrix& b, std::span<const Rational> x) {
  b.require_square("tconv_membership");
  if (x.size() != b.rows()) throw DimensionError("tconv_membership: point has the wrong length");
  if (!is_near_isodiametric(b))
    throw PreconditionError("tconv_membership requires a near-isodiametric matrix");
  const TropMatrix star = kleene_star(b.with_semiring(Semiring::MinPlus));
  for (const auto& c : hrep_of(star).rows)
    if (x[c.i] - x[c.j] > c.bound) return false;
  return true;
}

std::vector<std::size_t> nonredundant_generators(const TropMatrix& star) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < star.cols(); ++j) {
    std::vector<std::size_t> others;
    for (std::size_t k = 0; k < star.cols(); ++k)
      if (k != j) others.push_back(k);
    if (others.empty() || !in_tcone(star.select_columns(others), star.col(j))) out.push_back(j);
  }
  return out;
}

Point project(std::span<const TropScalar> x) {
  Point p;
  for (std::size_t i = 1; i < x.size(); ++i) p.push_back(x[i].value() - x[0].value());
  return p;
}

std::string render_svg(const Polytrope& p) {
  if (p.hrep.dim != 3) throw DimensionError("render_svg draws planar polytropes only (d = 3)");
  if (p.vertices.empty()) throw PreconditionError("render_svg: empty polytrope");

  // Exact counter-clockwise order around the vertex centroid.
  Rational cx = 0, cy = 0;
  for (const auto& v : p.vertices) {
    cx += v[0];
    cy += v[1];
  }
  cx /= static_cast<long>(p.vertices.size());
  cy /= static_cast<long>(p.vertices.size());
  auto half = [&](const Point& v) {
    Rational dx = v[0] - cx, dy = v[1] - cy;
    return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
  };
  std::vector<Point> ring = p.vertices;
  std::sort(ring.begin(), ring.end(), [&](const Point& a, const Point& b) {
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    Rational cross = (a[0] - cx) * (b[1] - cy) - (a[1] - cy) * (b[0] - cx);
    return cross > 0;
  });

  std::vector<Point> red;
  for (std::size_t j : nonredundant_generators(p.star)) red.push_back(project(p.star.col(j)));
  std::sort(red.begin(), red.end());
  red.erase(std::unique(red.begin(), red.end()), red.end());
  std::vector<Point> white;
  for (const auto& v : p.vertices)
    if (!std::binary_search(red.begin(), red.end(), v)) white.push_back(v);

  double xmin = to_double(ring[0][0]), xmax = xmin, ymin = to_double(ring[0][1]), ymax = ymin;
  for (const auto& v : ring) {
    xmin = std::min(xmin, to_double(v[0]));
    xmax = std::max(xmax, to_double(v[0]));
    ymin = std::min(ymin, to_double(v[1]));
    ymax = std::max(ymax, to_double(v[1]));
  }
  constexpr double scale = 100.0, margin = 20.0;
  const double width = (xmax - xmin) * scale + 2 * margin;
  const double height = (ymax - ymin) * scale + 2 * margin;
  auto sx = [&](const Rational& x) { return fixed((to_double(x) - xmin) * scale + margin); };
  auto sy = [&](const Rational& y) { return fixed((ymax - to_double(y)) * scale + margin); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed(width) << "\" height=\""
     << fixed(height) << "\" viewBox=\"0 0 " << fixed(width) << ' ' << fixed(height) << "\">\n"
     << "  <polygon points=\"";
  for (std::size_t k = 0; k < ring.size(); ++k) os << (k ? " " : "") << sx(ring[k][0]) << ',' << sy(ring[k][1]);
  os << "\" fill=\"#66b3a6\" stroke=\"black\" stroke-width=\"2\"/>\n";
  for (const auto& v : white)
    os << "  <circle class=\"pseudo-vertex\" cx=\"" << sx(v[0]) << "\" cy=\"" << sy(v[1])
       << "\" r=\"4\" fill=\"white\" stroke=\"black\"/>\n";
  for (const auto& v : red)
    os << "  <circle class=\"generator\" cx=\"" << sx(v[0]) << "\" cy=\"" << sy(v[1])
       << "\" r=\"5\" fill=\"red\" stroke=\"black\"/>\n";
  os << "</svg>\n";
  return os.str();
}

nlohmann::json polytrope_report(const Polytrope& p) {
  nlohmann::json facets = nlohmann::json::array(), vertices = nlohmann::json::array(),
                 profile = nlohmann::json::object();
  for (const auto& [i, j] : p.irredundant) facets.push_back({i, j});
  for (const auto& v : p.vertices) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : v) row.push_back(format_rational(x));
    vertices.push_back(std::move(row));
  }
  for (const auto& [f, n] : p.facet_profile) profile[std::to_string(f.first) + "," + std::to_string(f.second)] = n;
  return {{"facets", facets}, {"vertices", vertices}, {"profile", profile}, {"simple", genericity_check(p)}};
}

}  // namespace tropiso
