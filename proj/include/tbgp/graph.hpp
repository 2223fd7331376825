#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tbgp/random.hpp"
#include "tbgp/trust.hpp"

namespace tbgp {

using AsId = std::string;

enum class Role { Trusted, Distrusted };

inline const char* to_string(Role r) { return r == Role::Trusted ? "trusted" : "distrusted"; }

struct GridPos {
  int row = 0;
  int col = 0;

  friend bool operator==(const GridPos&, const GridPos&) = default;
};

struct AsNode {
  AsId id;
  Role role = Role::Trusted;
  std::optional<GridPos> grid_pos;

  friend bool operator==(const AsNode&, const AsNode&) = default;
};

struct OutEdge {
  int to = -1;
  TrustRate trust;
  double base_cost = 1.0;

  friend bool operator==(const OutEdge&, const OutEdge&) = default;
};

// Locates an incoming edge by the out-slot that owns it: out_edges(from)[ordinal].
struct InRef {
  int from = -1;
  int ordinal = -1;
};

// Directed trust graph over autonomous systems. Nodes and edges keep
// insertion order; everything downstream (routing sweeps, vote rounds,
// sampling) iterates in that order, so it is part of deterministic behaviour.
class AsGraph {
 public:
  int add_node(const AsId& id, Role role = Role::Trusted,
               std::optional<GridPos> pos = std::nullopt) {
    if (id.empty()) throw std::domain_error("node id must be nonempty");
    if (index_.count(id)) throw std::domain_error("duplicate node id '" + id + "'");
    const int i = static_cast<int>(nodes_.size());
    nodes_.push_back(AsNode{id, role, pos});
    index_.emplace(id, i);
    out_.emplace_back();
    in_.emplace_back();
    return i;
  }

  void add_edge(int from, int to, TrustRate trust = {}, double base_cost = 1.0) {
    check_index(from);
    check_index(to);
    if (from == to) throw std::domain_error("self-loop on '" + nodes_[from].id + "'");
    if (!(base_cost > 0.0) || !std::isfinite(base_cost))
      throw std::domain_error("base cost must be positive");
    if (out_ordinal(from, to) >= 0)
      throw std::domain_error("duplicate edge " + nodes_[from].id + " -> " + nodes_[to].id);
    in_[to].push_back(InRef{from, static_cast<int>(out_[from].size())});
    out_[from].push_back(OutEdge{to, trust, base_cost});
  }

  void add_edge(const AsId& from, const AsId& to, TrustRate trust = {}, double base_cost = 1.0) {
    add_edge(require(from), require(to), trust, base_cost);
  }

  // Removes both directions of each undirected pair; at least one direction
  // must exist per pair.
  void remove_pairs(const std::vector<std::pair<int, int>>& pairs) {
    for (const auto& [a, b] : pairs) {
      check_index(a);
      check_index(b);
      const bool ab = erase_edge(a, b);
      const bool ba = erase_edge(b, a);
      if (!ab && !ba)
        throw std::domain_error("no link between '" + nodes_[a].id + "' and '" + nodes_[b].id + "'");
    }
    rebuild_in();
  }

  int size() const { return static_cast<int>(nodes_.size()); }

  const AsNode& node(int i) const { return nodes_[i]; }

  std::optional<int> find(const AsId& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int require(const AsId& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) throw std::domain_error("unknown node '" + id + "'");
    return it->second;
  }

  const std::vector<OutEdge>& out_edges(int i) const { return out_[i]; }

  const std::vector<InRef>& in_edges(int i) const { return in_[i]; }

  // Position of edge from->to in out_edges(from), or -1.
  int out_ordinal(int from, int to) const {
    const auto& es = out_[from];
    for (std::size_t k = 0; k < es.size(); ++k)
      if (es[k].to == to) return static_cast<int>(k);
    return -1;
  }

  const OutEdge* edge(int from, int to) const {
    const int k = out_ordinal(from, to);
    return k < 0 ? nullptr : &out_[from][k];
  }

  int edge_count() const {
    int n = 0;
    for (const auto& es : out_) n += static_cast<int>(es.size());
    return n;
  }

  // Distinct neighbor count, ignoring edge direction.
  int undirected_degree(int i) const {
    std::vector<int> ns;
    ns.reserve(out_[i].size() + in_[i].size());
    for (const OutEdge& e : out_[i]) ns.push_back(e.to);
    for (const InRef& r : in_[i]) ns.push_back(r.from);
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    return static_cast<int>(ns.size());
  }

  // All linked pairs as (min, max), sorted — the canonical link list.
  std::vector<std::pair<int, int>> undirected_pairs() const {
    std::vector<std::pair<int, int>> ps;
    for (int u = 0; u < size(); ++u)
      for (const OutEdge& e : out_[u])
        ps.emplace_back(std::min(u, e.to), std::max(u, e.to));
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
  }

  void set_role(int i, Role r) {
    check_index(i);
    nodes_[i].role = r;
  }

  void set_trust(int from, int ordinal, TrustRate t) {
    check_index(from);
    if (ordinal < 0 || ordinal >= static_cast<int>(out_[from].size()))
      throw std::domain_error("edge ordinal out of range");
    out_[from][ordinal].trust = t;
  }

  void set_trust(const AsId& from, const AsId& to, TrustRate t) {
    const int f = require(from);
    const int k = out_ordinal(f, require(to));
    if (k < 0) throw std::domain_error("no edge " + from + " -> " + to);
    out_[f][k].trust = t;
  }

  friend bool operator==(const AsGraph& a, const AsGraph& b) {
    return a.nodes_ == b.nodes_ && a.out_ == b.out_;
  }

 private:
  void check_index(int i) const {
    if (i < 0 || i >= size()) throw std::domain_error("node index out of range");
  }

  bool erase_edge(int from, int to) {
    auto& es = out_[from];
    for (auto it = es.begin(); it != es.end(); ++it) {
      if (it->to == to) {
        es.erase(it);
        return true;
      }
    }
    return false;
  }

  void rebuild_in() {
    for (auto& v : in_) v.clear();
    for (int u = 0; u < size(); ++u)
      for (std::size_t k = 0; k < out_[u].size(); ++k)
        in_[out_[u][k].to].push_back(InRef{u, static_cast<int>(k)});
  }

  std::vector<AsNode> nodes_;
  std::unordered_map<AsId, int> index_;
  std::vector<std::vector<OutEdge>> out_;
  std::vector<std::vector<InRef>> in_;
};

inline double average_degree(const AsGraph& g) {
  if (g.size() == 0) return 0.0;
  double sum = 0.0;
  for (int i = 0; i < g.size(); ++i) sum += g.undirected_degree(i);
  return sum / g.size();
}

// Average undirected degree of an untrimmed rows x cols grid with 8-neighbor
// adjacency and no wraparound.
inline double full_grid_average_degree(int rows, int cols) {
  const double pairs = static_cast<double>(rows) * (cols - 1) + static_cast<double>(cols) * (rows - 1) +
                       2.0 * (rows - 1) * (cols - 1);
  return 2.0 * pairs / (static_cast<double>(rows) * cols);
}

struct GridConfig {
  int rows = 15;
  int cols = 15;
  double distrusted_fraction = 0.2;
  double target_avg_degree = 6.5;
  double mu_trusted = 0.7;
  double mu_distrusted = 0.3;
  double sigma = 0.2;
  std::uint64_t seed = 1;

  void validate() const {
    if (rows < 1 || cols < 1) throw std::domain_error("grid needs at least one row and column");
    if (!(distrusted_fraction >= 0.0 && distrusted_fraction < 1.0))
      throw std::domain_error("distrusted fraction outside [0, 1)");
    if (!(target_avg_degree > 0.0))
      throw std::domain_error("degree target must be positive");
    if (target_avg_degree > full_grid_average_degree(rows, cols) + 1e-12)
      throw std::domain_error("degree target above grid maximum");
    if (!std::isfinite(mu_trusted) || !std::isfinite(mu_distrusted))
      throw std::domain_error("trust means must be finite");
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
      throw std::domain_error("sigma must be nonnegative");
  }

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

// rows x cols grid, 8-neighbor adjacency, no wraparound. Node ids are
// "r<row>c<col>"; links carry an edge in both directions at the 0.5
// uncertainty default. Structure is fully determined by the dimensions.
inline AsGraph generate_grid(const GridConfig& cfg) {
  cfg.validate();
  AsGraph g;
  for (int r = 0; r < cfg.rows; ++r)
    for (int c = 0; c < cfg.cols; ++c)
      g.add_node("r" + std::to_string(r) + "c" + std::to_string(c), Role::Trusted,
                 GridPos{r, c});
  const auto at = [&](int r, int c) { return r * cfg.cols + c; };
  // offsets covering each neighbor pair exactly once
  constexpr int kOffsets[4][2] = {{0, 1}, {1, -1}, {1, 0}, {1, 1}};
  for (int r = 0; r < cfg.rows; ++r) {
    for (int c = 0; c < cfg.cols; ++c) {
      for (const auto& d : kOffsets) {
        const int rr = r + d[0];
        const int cc = c + d[1];
        if (rr < 0 || rr >= cfg.rows || cc < 0 || cc >= cfg.cols) continue;
        g.add_edge(at(r, c), at(rr, cc));
        g.add_edge(at(rr, cc), at(r, c));
      }
    }
  }
  return g;
}

// Removes uniformly chosen links (both directions) until the average
// undirected degree is at or below target.
inline AsGraph thin_links(AsGraph g, double target, RandomStream& rng) {
  if (!(target >= 0.0)) throw std::domain_error("degree target must be nonnegative");
  if (g.size() == 0) return g;
  std::vector<std::pair<int, int>> pairs = g.undirected_pairs();
  double degree_sum = 2.0 * static_cast<double>(pairs.size());
  const double n = g.size();
  std::vector<std::pair<int, int>> removed;
  while (degree_sum / n > target) {
    if (pairs.empty()) break;  // target 0, fully disconnected
    const std::size_t k = static_cast<std::size_t>(rng.uniform_below(pairs.size()));
    removed.push_back(pairs[k]);
    pairs[k] = pairs.back();
    pairs.pop_back();
    degree_sum -= 2.0;
  }
  g.remove_pairs(removed);
  return g;
}

// Marks round(fraction * size) nodes Distrusted via a partial Fisher-Yates
// shuffle of the node indices; everyone else is (re)marked Trusted.
inline AsGraph assign_roles(AsGraph g, double fraction, RandomStream& rng) {
  if (!(fraction >= 0.0 && fraction < 1.0))
    throw std::domain_error("distrusted fraction outside [0, 1)");
  const int n = g.size();
  const int k = static_cast<int>(std::llround(fraction * n));
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n - i)));
    std::swap(idx[i], idx[j]);
  }
  for (int i = 0; i < n; ++i) g.set_role(idx[i], Role::Trusted);
  for (int i = 0; i < k; ++i) g.set_role(idx[i], Role::Distrusted);
  return g;
}

// Draws each directed edge's trust from N(mu_role-of-subject, sigma), clamped
// into [0, 1]. Iterates nodes then out-edges in adjacency order.
inline AsGraph sample_direct_trust(AsGraph g, const GridConfig& cfg, RandomStream& rng) {
  for (int u = 0; u < g.size(); ++u) {
    const auto& es = g.out_edges(u);
    for (std::size_t k = 0; k < es.size(); ++k) {
      const double mu =
          g.node(es[k].to).role == Role::Trusted ? cfg.mu_trusted : cfg.mu_distrusted;
      g.set_trust(u, static_cast<int>(k), TrustRate(rng.normal(mu, cfg.sigma)));
    }
  }
  return g;
}

// The eight-node worked example used by the CLI's example-paths command.
inline AsGraph build_example_graph() {
  AsGraph g;
  for (const char* id : {"A", "B", "C", "D", "E", "G", "H", "J"}) g.add_node(id);
  g.add_edge("A", "B", TrustRate::strict(0.9));
  g.add_edge("B", "G", TrustRate::strict(0.8));
  g.add_edge("G", "H", TrustRate::strict(0.6));
  g.add_edge("A", "J", TrustRate::strict(0.6));
  g.add_edge("J", "H", TrustRate::strict(0.56));
  g.add_edge("A", "E", TrustRate::strict(0.89));
  g.add_edge("E", "C", TrustRate::strict(0.98));
  g.add_edge("C", "D", TrustRate::strict(0.68));
  g.add_edge("D", "H", TrustRate::strict(0.71));
  return g;
}

}  // namespace tbgp
