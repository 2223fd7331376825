#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tbgp/graph.hpp"
#include "tbgp/text.hpp"

namespace tbgp {

// Input problem pinned to a 1-based line number (0 = whole-file problem).
struct ParseError : std::runtime_error {
  int line;

  explicit ParseError(const std::string& msg) : std::runtime_error(msg), line(0) {}
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct Diagnostic {
  int line = 0;
  std::string message;
};

// Topology text format — one record per line, '#' starts a comment:
//   node <id> <trusted|distrusted>
//   edge <from> <to> <trust> [base_cost]
// base_cost defaults to 1 and is omitted on save when it is 1. Trust must lie
// in [0, 1]; endpoints must be declared before use (file order: any, the
// loader collects nodes first).

namespace detail {

struct EdgeRecord {
  int line;
  std::string from, to;
  double trust;
  double base;
};

}  // namespace detail

// Checks a topology document, returning every problem found (empty = valid).
// When `out` is given and the document is valid, the graph is stored there.
inline std::vector<Diagnostic> validate_topology(std::istream& in, AsGraph* out = nullptr) {
  std::vector<Diagnostic> diags;
  AsGraph g;
  std::vector<detail::EdgeRecord> edges;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line{raw};
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "node") {
      if (tokens.size() != 3) {
        diags.push_back({lineno, "node takes <id> <trusted|distrusted>"});
        continue;
      }
      Role role;
      if (tokens[2] == "trusted") {
        role = Role::Trusted;
      } else if (tokens[2] == "distrusted") {
        role = Role::Distrusted;
      } else {
        diags.push_back({lineno, "unknown role '" + std::string(tokens[2]) + "'"});
        continue;
      }
      const AsId id{tokens[1]};
      if (g.find(id)) {
        diags.push_back({lineno, "duplicate node '" + id + "'"});
        continue;
      }
      g.add_node(id, role);
    } else if (tokens[0] == "edge") {
      if (tokens.size() != 4 && tokens.size() != 5) {
        diags.push_back({lineno, "edge takes <from> <to> <trust> [base_cost]"});
        continue;
      }
      detail::EdgeRecord rec;
      rec.line = lineno;
      rec.from = std::string(tokens[1]);
      rec.to = std::string(tokens[2]);
      rec.base = 1.0;
      if (!parse_double(tokens[3], rec.trust)) {
        diags.push_back({lineno, "bad trust value '" + std::string(tokens[3]) + "'"});
        continue;
      }
      if (!(rec.trust >= 0.0 && rec.trust <= 1.0)) {
        diags.push_back({lineno, "trust " + std::string(tokens[3]) + " outside [0, 1]"});
        continue;
      }
      if (tokens.size() == 5) {
        if (!parse_double(tokens[4], rec.base) || !(rec.base > 0.0)) {
          diags.push_back({lineno, "bad base cost '" + std::string(tokens[4]) + "'"});
          continue;
        }
      }
      edges.push_back(std::move(rec));
    } else {
      diags.push_back({lineno, "unknown directive '" + std::string(tokens[0]) + "'"});
    }
  }
  for (const detail::EdgeRecord& rec : edges) {
    if (!g.find(rec.from)) {
      diags.push_back({rec.line, "edge references unknown node '" + rec.from + "'"});
      continue;
    }
    if (!g.find(rec.to)) {
      diags.push_back({rec.line, "edge references unknown node '" + rec.to + "'"});
      continue;
    }
    if (rec.from == rec.to) {
      diags.push_back({rec.line, "self-loop on '" + rec.from + "'"});
      continue;
    }
    if (g.edge(g.require(rec.from), g.require(rec.to))) {
      diags.push_back({rec.line, "duplicate edge " + rec.from + " -> " + rec.to});
      continue;
    }
    g.add_edge(rec.from, rec.to, TrustRate::strict(rec.trust), rec.base);
  }
  if (diags.empty() && out) *out = std::move(g);
  return diags;
}

// Loads a topology document, throwing ParseError on the first problem.
inline AsGraph load_topology(std::istream& in) {
  AsGraph g;
  const std::vector<Diagnostic> diags = validate_topology(in, &g);
  if (!diags.empty()) throw ParseError(diags.front().line, diags.front().message);
  return g;
}

inline AsGraph load_topology_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  return load_topology(f);
}

// Writes nodes (sorted by id), then edges (sorted by from, to). Numbers use
// the shortest round-tripping form, so save/load is lossless.
inline void save_topology(const AsGraph& g, std::ostream& out) {
  std::vector<int> order(g.size());
  for (int i = 0; i < g.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return g.node(a).id < g.node(b).id; });
  for (int i : order) out << "node " << g.node(i).id << ' ' << to_string(g.node(i).role) << '\n';
  struct Row {
    const AsId* from;
    const AsId* to;
    double trust, base;
  };
  std::vector<Row> rows;
  rows.reserve(g.edge_count());
  for (int u = 0; u < g.size(); ++u)
    for (const OutEdge& e : g.out_edges(u))
      rows.push_back({&g.node(u).id, &g.node(e.to).id, e.trust.value(), e.base_cost});
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (*a.from != *b.from) return *a.from < *b.from;
    return *a.to < *b.to;
  });
  for (const Row& r : rows) {
    out << "edge " << *r.from << ' ' << *r.to << ' ' << format_double(r.trust);
    if (r.base != 1.0) out << ' ' << format_double(r.base);
    out << '\n';
  }
}

inline void save_topology_file(const AsGraph& g, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  save_topology(g, f);
  f.flush();
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace tbgp
