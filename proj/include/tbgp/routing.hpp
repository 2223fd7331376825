#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tbgp/graph.hpp"

namespace tbgp {

using Path = std::vector<AsId>;

enum class CostModel { DirectSum, Recommended };

inline const char* to_string(CostModel m) {
  return m == CostModel::DirectSum ? "direct" : "recommended";
}

struct CompleteDistrustError : std::domain_error {
  CompleteDistrustError() : std::domain_error("zero-trust link cannot carry a route") {}
};

// Effective cost of one link: base cost inflated by the inverse trust rate.
inline double normalized_cost(double cost, TrustRate trust) {
  if (!(cost > 0.0) || !std::isfinite(cost)) throw std::domain_error("cost must be positive");
  if (trust.value() == 0.0) throw CompleteDistrustError();
  return cost / trust.value();
}

// Additive model: every link contributes its own trust-normalised cost.
inline double path_cost_direct(const std::vector<TrustRate>& link_trusts) {
  if (link_trusts.empty()) throw std::domain_error("path needs at least one link");
  double sum = 0.0;
  for (TrustRate t : link_trusts) sum += normalized_cost(1.0, t);
  return sum;
}

// Recommendation model: the first hop vouches for everything behind it, so
// its trust divides the whole remaining cost, not just its own link.
inline double path_cost_recommended(TrustRate first_hop, double downstream_cost) {
  if (!(downstream_cost >= 0.0) || !std::isfinite(downstream_cost))
    throw std::domain_error("downstream cost must be nonnegative");
  if (first_hop.value() == 0.0) throw CompleteDistrustError();
  return (1.0 + downstream_cost) / first_hop.value();
}

struct RouteEntry {
  AsId destination;
  AsId next_hop;
  Path as_path;  // starts at the owning node, ends at the destination
  // Selection metric under `model`. The destination's own entry is 0; any
  // other entry is >= 1 because trust rates never exceed 1.
  double cost = 0.0;
  // Additive (per-link normalised) cost of as_path — the figure a node shares
  // with its in-neighbors, which fold in their own first-hop trust
  // themselves. Equals `cost` under DirectSum.
  double advertised_cost = 0.0;
  CostModel model = CostModel::DirectSum;
};

namespace detail {

struct RouteState {
  std::vector<int> path;  // node indices, owner first, destination last
  double cost = 0.0;
  double adv = 0.0;
};

// Orders candidates by cost, then hop count, then lexicographic id sequence.
inline bool better_route(const AsGraph& g, const RouteState& a, const RouteState& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  if (a.path.size() != b.path.size()) return a.path.size() < b.path.size();
  for (std::size_t i = 0; i < a.path.size(); ++i) {
    const AsId& la = g.node(a.path[i]).id;
    const AsId& lb = g.node(b.path[i]).id;
    if (la != lb) return la < lb;
  }
  return false;
}

inline bool same_route(const std::optional<RouteState>& a, const std::optional<RouteState>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a.has_value()) return true;
  return a->path == b->path && a->cost == b->cost && a->adv == b->adv;
}

}  // namespace detail

// Path-vector propagation to one destination. Nodes are swept in index order,
// each adopting its best loop-free candidate among the neighbors' current
// entries: a candidate through edge (u, v) with trust T costs
//   DirectSum:    base/T + advertised(v)
//   Recommended:  (base + advertised(v)) / T
// and, if chosen, u advertises base/T + advertised(v) onward. Sweeps repeat
// until nothing changes; nodes with no usable route (zero-trust or
// disconnected) are absent from the result. Deterministic: sweep order,
// adjacency order, and an explicit tie-break fix every choice. Because the
// Recommended selection metric differs from the advertised metric, some
// graphs have no stable route assignment at all (the classic policy-routing
// dispute); those are reported as a failure to converge rather than returning
// an unstable table. Sequential in-place adoption (rather than simultaneous
// rounds) keeps two nodes from endlessly trading places when stable states
// do exist.
inline std::map<AsId, RouteEntry> propagate_routes(const AsGraph& g, const AsId& destination,
                                                   CostModel model) {
  const int dest = g.require(destination);
  const int n = g.size();
  std::vector<std::optional<detail::RouteState>> state(n);
  state[dest] = detail::RouteState{{dest}, 0.0, 0.0};
  // Choices stabilize within n sweeps when an equilibrium is reachable and
  // costs settle along chosen paths in at most n more; past this cap the
  // selections are cycling and no fixed point will be reached.
  const int max_sweeps = 4 * n + 16;
  for (int sweep = 0;; ++sweep) {
    if (sweep > max_sweeps)
      throw std::runtime_error("route propagation did not reach a fixed point");
    bool changed = false;
    for (int u = 0; u < n; ++u) {
      if (u == dest) continue;
      std::optional<detail::RouteState> best;
      for (const OutEdge& e : g.out_edges(u)) {
        const std::optional<detail::RouteState>& offer = state[e.to];
        if (!offer) continue;
        if (e.trust.value() == 0.0) continue;
        bool loops = false;
        for (int hop : offer->path)
          if (hop == u) {
            loops = true;
            break;
          }
        if (loops) continue;
        detail::RouteState cand;
        cand.adv = e.base_cost / e.trust.value() + offer->adv;
        cand.cost = model == CostModel::DirectSum
                        ? cand.adv
                        : (e.base_cost + offer->adv) / e.trust.value();
        cand.path.reserve(offer->path.size() + 1);
        cand.path.push_back(u);
        cand.path.insert(cand.path.end(), offer->path.begin(), offer->path.end());
        if (!best || detail::better_route(g, cand, *best)) best = std::move(cand);
      }
      if (!detail::same_route(best, state[u])) changed = true;
      state[u] = std::move(best);
    }
    if (!changed) break;
  }
  std::map<AsId, RouteEntry> table;
  for (int u = 0; u < n; ++u) {
    if (!state[u]) continue;
    RouteEntry e;
    e.destination = destination;
    e.model = model;
    e.cost = state[u]->cost;
    e.advertised_cost = state[u]->adv;
    e.as_path.reserve(state[u]->path.size());
    for (int hop : state[u]->path) e.as_path.push_back(g.node(hop).id);
    e.next_hop = e.as_path.size() > 1 ? e.as_path[1] : e.as_path[0];
    table.emplace(g.node(u).id, std::move(e));
  }
  return table;
}

// All simple paths src -> dst with at most max_len nodes, in depth-first
// order following the adjacency lists.
inline std::vector<Path> enumerate_paths(const AsGraph& g, const AsId& src, const AsId& dst,
                                         int max_len) {
  const int s = g.require(src);
  const int d = g.require(dst);
  if (s == d) throw std::domain_error("source equals destination");
  if (max_len < 1) throw std::domain_error("max_len must be positive");
  std::vector<Path> out;
  std::vector<int> stack{s};
  std::vector<char> visited(g.size(), 0);
  visited[s] = 1;
  const auto emit = [&]() {
    Path p;
    p.reserve(stack.size() + 1);
    for (int i : stack) p.push_back(g.node(i).id);
    p.push_back(g.node(d).id);
    out.push_back(std::move(p));
  };
  const auto dfs = [&](const auto& self, int u) -> void {
    for (const OutEdge& e : g.out_edges(u)) {
      if (e.to == d) {
        if (stack.size() + 1 <= static_cast<std::size_t>(max_len)) emit();
        continue;
      }
      if (visited[e.to]) continue;
      if (stack.size() + 2 > static_cast<std::size_t>(max_len)) continue;  // no room left
      visited[e.to] = 1;
      stack.push_back(e.to);
      self(self, e.to);
      stack.pop_back();
      visited[e.to] = 0;
    }
  };
  dfs(dfs, s);
  return out;
}

// Cost of a concrete path under either model. The path must exist edge by
// edge and have at least two nodes.
inline double path_cost_along(const AsGraph& g, const Path& path, CostModel model) {
  if (path.size() < 2) throw std::domain_error("path needs at least two nodes");
  std::vector<const OutEdge*> edges;
  edges.reserve(path.size() - 1);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const OutEdge* e = g.edge(g.require(path[i]), g.require(path[i + 1]));
    if (!e) throw std::domain_error("no edge " + path[i] + " -> " + path[i + 1]);
    edges.push_back(e);
  }
  if (model == CostModel::DirectSum) {
    double sum = 0.0;
    for (const OutEdge* e : edges) sum += normalized_cost(e->base_cost, e->trust);
    return sum;
  }
  double downstream = 0.0;
  for (std::size_t i = 1; i < edges.size(); ++i)
    downstream += normalized_cost(edges[i]->base_cost, edges[i]->trust);
  return normalized_cost(edges[0]->base_cost + downstream, edges[0]->trust);
}

}  // namespace tbgp
