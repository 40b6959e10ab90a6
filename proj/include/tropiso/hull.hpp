#pragma once

#include <cstddef>
#include <vector>

#include "tropiso/scalar.hpp"

namespace tropiso {

struct HullVolume {
  Rational volume;
  std::size_t alpha = 0;  // maximal cells of the triangulation used
};

/// Exact k-dimensional volume of the convex hull of points in R^k, k <= 3.
/// k = 1: segment length. k = 2: shoelace area, fan from one hull vertex.
/// k = 3: cone from the lexicographically smallest point over the
/// triangulated facets not containing it. Lower-dimensional hulls give
/// volume 0 and alpha 0.
HullVolume hull_volume(const std::vector<std::vector<Rational>>& points);

/// Counter-clockwise hull of planar points (Andrew's monotone chain),
/// without collinear boundary points.
std::vector<std::vector<Rational>> convex_hull_2d(std::vector<std::vector<Rational>> points);

}  // namespace tropiso
