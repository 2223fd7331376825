#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "tbgp/routing.hpp"
#include "tbgp/simulation.hpp"
#include "tbgp/text.hpp"

namespace tbgp {

inline std::string join_path(const Path& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '-';
    s += p[i];
  }
  return s;
}

// Costs of the example topology's A->H paths under one or both models, one
// row per (path, model), plus the row the route-selection fixed point picks
// (model suffix "-best"). Costs print with four decimals.
inline void write_example_paths_csv(std::ostream& os, bool direct, bool recommended) {
  const AsGraph g = build_example_graph();
  const std::vector<Path> paths = enumerate_paths(g, "A", "H", 5);
  os << "path,model,cost\n";
  const auto emit = [&](CostModel m) {
    for (const Path& p : paths)
      os << join_path(p) << ',' << to_string(m) << ','
         << format_fixed(path_cost_along(g, p, m), 4) << '\n';
    const auto table = propagate_routes(g, "H", m);
    const RouteEntry& best = table.at("A");
    os << join_path(best.as_path) << ',' << to_string(m) << "-best,"
       << format_fixed(best.cost, 4) << '\n';
  };
  if (direct) emit(CostModel::DirectSum);
  if (recommended) emit(CostModel::Recommended);
}

inline void write_variation_csv(std::ostream& os, const std::vector<VariationPoint>& points) {
  os << "step,t1,tau,cost_direct,cost_recommended\n";
  for (std::size_t i = 0; i < points.size(); ++i)
    os << i << ',' << format_double(points[i].t1) << ',' << format_double(points[i].tau) << ','
       << format_fixed(points[i].cost_direct, 4) << ','
       << format_fixed(points[i].cost_recommended, 4) << '\n';
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells) {
  os << "alpha,degree_target,mean_realized_degree,mean_failure,std_failure,replicates\n";
  for (const SweepCell& c : cells)
    os << format_double(c.alpha) << ',' << format_double(c.degree_target) << ','
       << format_fixed(c.mean_realized_degree, 4) << ',' << format_fixed(c.mean_failure, 6)
       << ',' << format_fixed(c.std_failure, 6) << ',' << c.replicates << '\n';
}

}  // namespace tbgp
