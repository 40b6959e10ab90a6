#include "tropiso/hull.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "tropiso/errors.hpp"

namespace tropiso {

namespace {

using Vec = std::vector<Rational>;

Rational cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::array<Rational, 3> sub3(const Vec& a, const Vec& b) {
  return {Rational(a[0] - b[0]), Rational(a[1] - b[1]), Rational(a[2] - b[2])};
}

std::array<Rational, 3> cross3(const std::array<Rational, 3>& u, const std::array<Rational, 3>& v) {
  return {Rational(u[1] * v[2] - u[2] * v[1]), Rational(u[2] * v[0] - u[0] * v[2]),
          Rational(u[0] * v[1] - u[1] * v[0])};
}

Rational dot3(const std::array<Rational, 3>& u, const std::array<Rational, 3>& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

HullVolume volume_2d(const std::vector<Vec>& pts) {
  auto hull = convex_hull_2d(pts);
  if (hull.size() < 3) return {Rational(0), 0};
  Rational twice = 0;
  for (std::size_t k = 0; k < hull.size(); ++k) {
    const Vec& a = hull[k];
    const Vec& b = hull[(k + 1) % hull.size()];
    twice += a[0] * b[1] - a[1] * b[0];
  }
  return {Rational(abs(twice) / 2), hull.size() - 2};
}

HullVolume volume_3d(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n < 4) return {Rational(0), 0};

  // Supporting planes through three non-collinear points; each facet is
  // identified by the set of points lying on it.
  std::set<std::vector<std::size_t>> facets;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        auto normal = cross3(sub3(pts[b], pts[a]), sub3(pts[c], pts[a]));
        if (normal[0] == 0 && normal[1] == 0 && normal[2] == 0) continue;
        bool pos = false, neg = false;
        std::vector<std::size_t> on;
        for (std::size_t p = 0; p < n; ++p) {
          Rational s = dot3(normal, sub3(pts[p], pts[a]));
          if (s > 0) pos = true;
          else if (s < 0) neg = true;
          else on.push_back(p);
        }
        if (pos && neg) continue;
        if (!pos && !neg) return {Rational(0), 0};  // all points coplanar
        facets.insert(std::move(on));
      }

  // pts[0] is lexicographically smallest, hence a vertex of the hull.
  const Vec& apex = pts[0];
  HullVolume out{Rational(0), 0};
  for (const auto& facet : facets) {
    if (facet.front() == 0) continue;
    auto normal = cross3(sub3(pts[facet[1]], pts[facet[0]]), sub3(pts[facet[2]], pts[facet[0]]));
    for (std::size_t k = 2; k < facet.size() && normal == std::array<Rational, 3>{0, 0, 0}; ++k)
      normal = cross3(sub3(pts[facet[1]], pts[facet[0]]), sub3(pts[facet[k]], pts[facet[0]]));
    // Project along the dominant normal axis to order the facet polygon.
    std::size_t drop = 0;
    for (std::size_t ax = 1; ax < 3; ++ax)
      if (abs(normal[ax]) > abs(normal[drop])) drop = ax;
    std::map<Vec, std::size_t> back;
    std::vector<Vec> flat;
    for (std::size_t idx : facet) {
      Vec q;
      for (std::size_t ax = 0; ax < 3; ++ax)
        if (ax != drop) q.push_back(pts[idx][ax]);
      back[q] = idx;
      flat.push_back(std::move(q));
    }
    auto ring = convex_hull_2d(flat);
    for (std::size_t k = 1; k + 1 < ring.size(); ++k) {
      const Vec& p0 = pts[back[ring[0]]];
      const Vec& p1 = pts[back[ring[k]]];
      const Vec& p2 = pts[back[ring[k + 1]]];
      Rational det = dot3(sub3(p0, apex), cross3(sub3(p1, apex), sub3(p2, apex)));
      out.volume += abs(det) / 6;
      ++out.alpha;
    }
  }
  return out;
}

}  // namespace

std::vector<Vec> convex_hull_2d(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

HullVolume hull_volume(const std::vector<std::vector<Rational>>& points) {
  if (points.empty()) return {Rational(0), 0};
  const std::size_t k = points.front().size();
  for (const auto& p : points)
    if (p.size() != k) throw DimensionError("hull_volume: points of different dimension");
  switch (k) {
    case 1: {
      auto [lo, hi] = std::minmax_element(points.begin(), points.end());
      Rational len = (*hi)[0] - (*lo)[0];
      return {len, len > 0 ? 1u : 0u};
    }
    case 2: return volume_2d(points);
    case 3: return volume_3d(points);
    default: throw DimensionError("hull_volume supports ambient dimension 1, 2 or 3");
  }
}

}  // namespace tropiso
