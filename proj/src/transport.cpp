#include "tropiso/transport.hpp"

#include <algorithm>

namespace tropiso {

namespace {

struct Arc {
  std::size_t to;
  std::size_t rev;  // index of the paired arc in adjacency[to]
  int cap;
  Rational cost;
};

class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t n) : adj_(n) {}

  void add_arc(std::size_t from, std::size_t to, Rational cost) {
    adj_[from].push_back({to, adj_[to].size(), 1, cost});
    adj_[to].push_back({from, adj_[from].size() - 1, 0, Rational(-cost)});
  }

  // Sends one unit along a cheapest residual path. False if none exists.
  bool augment(std::size_t source, std::size_t sink, Rational& total) {
    const std::size_t n = adj_.size();
    std::vector<std::optional<Rational>> dist(n);
    std::vector<std::pair<std::size_t, std::size_t>> via(n, {n, 0});
    dist[source] = Rational(0);
    for (std::size_t round = 0; round + 1 < n; ++round) {
      bool changed = false;
      for (std::size_t u = 0; u < n; ++u) {
        if (!dist[u]) continue;
        for (std::size_t k = 0; k < adj_[u].size(); ++k) {
          const Arc& a = adj_[u][k];
          if (a.cap == 0) continue;
          Rational cand = *dist[u] + a.cost;
          if (!dist[a.to] || cand < *dist[a.to]) {
            dist[a.to] = std::move(cand);
            via[a.to] = {u, k};
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (!dist[sink]) return false;
    for (std::size_t v = sink; v != source;) {
      auto [u, k] = via[v];
      Arc& a = adj_[u][k];
      a.cap -= 1;
      adj_[v][a.rev].cap += 1;
      v = u;
    }
    total += *dist[sink];
    return true;
  }

  const std::vector<Arc>& arcs_from(std::size_t u) const { return adj_[u]; }

 private:
  std::vector<std::vector<Arc>> adj_;
};

}  // namespace

std::optional<TransportSolution> max_weight_transport(
    const std::vector<std::vector<std::optional<Rational>>>& weights) {
  const std::size_t d = weights.size();
  if (d == 0) return TransportSolution{Rational(0), {}};
  const std::size_t m = weights.front().size();
  // Nodes: source, rows 1..d, columns d+1..d+m, sink.
  const std::size_t source = 0, sink = d + m + 1;
  FlowNetwork net(d + m + 2);
  for (std::size_t i = 0; i < d; ++i) net.add_arc(source, 1 + i, Rational(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (weights[i][j]) net.add_arc(1 + i, 1 + d + j, Rational(-*weights[i][j]));
  for (std::size_t j = 0; j < m; ++j) net.add_arc(1 + d + j, sink, Rational(0));

  Rational cost = 0;
  for (std::size_t unit = 0; unit < d; ++unit)
    if (!net.augment(source, sink, cost)) return std::nullopt;

  TransportSolution sol{Rational(-cost), {}};
  for (std::size_t i = 0; i < d; ++i)
    for (const auto& a : net.arcs_from(1 + i))
      if (a.to > d && a.to <= d + m && a.cap == 0) sol.arcs.emplace_back(i, a.to - 1 - d);
  return sol;
}

}  // namespace tropiso
