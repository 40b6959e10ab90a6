#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tropiso/scalar.hpp"

namespace tropiso {

/// Integral optimum of the transportation LP
///   max Σ w_ij x_ij  s.t.  Σ_j x_ij = 1 (every row),  Σ_i x_ij <= 1 (every column),  x >= 0
/// over the bipartite graph of allowed cells (nullopt weight = no arc).
/// Successive shortest paths: one unit per row, each path found by
/// Bellman–Ford in the residual network.
struct TransportSolution {
  Rational value;
  std::vector<std::pair<std::size_t, std::size_t>> arcs;  // (row, column), sorted by row
};

std::optional<TransportSolution> max_weight_transport(
    const std::vector<std::vector<std::optional<Rational>>>& weights);

}  // namespace tropiso
