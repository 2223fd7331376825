#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "tbgp/routing.hpp"
#include "tbgp/voting.hpp"

namespace tbgp {

// Two-link chain study: destination two hops away, first-hop trust t1 falling
// linearly while the far link's trust tau rises geometrically.
struct VariationConfig {
  int steps = 10;
  double t1_start = 1.0;
  double t1_end = 0.1;
  double tau_start = 0.05;
  double tau_end = 0.33;

  void validate() const {
    if (steps < 1) throw std::domain_error("steps must be positive");
    for (double v : {t1_start, t1_end, tau_start, tau_end}) {
      if (!(v > 0.0 && v <= 1.0))
        throw std::domain_error("trust endpoints must lie in (0, 1]");
    }
  }

  friend bool operator==(const VariationConfig&, const VariationConfig&) = default;
};

struct VariationPoint {
  double t1 = 0.0;
  double tau = 0.0;
  double cost_direct = 0.0;
  double cost_recommended = 0.0;
};

// The recommended-minus-direct gap at each point is (1/tau) * (1 - t1) / t1:
// zero while the first hop is fully trusted, growing as t1 falls.
inline std::vector<VariationPoint> run_trust_variation(const VariationConfig& cfg) {
  cfg.validate();
  std::vector<VariationPoint> out;
  out.reserve(cfg.steps);
  const int last = cfg.steps - 1;
  const double ratio = last > 0 ? std::pow(cfg.tau_end / cfg.tau_start, 1.0 / last) : 1.0;
  for (int k = 0; k < cfg.steps; ++k) {
    double t1, tau;
    if (k == 0) {
      t1 = cfg.t1_start;
      tau = cfg.tau_start;
    } else if (k == last) {
      t1 = cfg.t1_end;
      tau = cfg.tau_end;
    } else {
      t1 = cfg.t1_start + (cfg.t1_end - cfg.t1_start) * (static_cast<double>(k) / last);
      tau = cfg.tau_start * std::pow(ratio, k);
    }
    VariationPoint p;
    p.t1 = t1;
    p.tau = tau;
    p.cost_direct = path_cost_direct({TrustRate(t1), TrustRate(tau)});
    p.cost_recommended = path_cost_recommended(TrustRate(t1), normalized_cost(1.0, TrustRate(tau)));
    out.push_back(p);
  }
  return out;
}

// Fraction of (trusted evaluator, out-neighbor) pairs whose derived rate
// misjudges the subject: a trusted subject rated below 0.6 or a distrusted
// subject rated above 0.4. Rates exactly on a boundary count as detected.
inline double detection_failures(const AsGraph& g, const TrustState& state) {
  long failures = 0;
  long total = 0;
  for (int e = 0; e < g.size(); ++e) {
    if (g.node(e).role != Role::Trusted) continue;
    const auto& edges = g.out_edges(e);
    for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
      const TrustState::Slot& slot = state.at(e, k);
      if (!slot.derived)
        throw std::domain_error("derived rate missing; run a vote round first");
      const double d = slot.derived->value();
      const bool subject_trusted = g.node(edges[k].to).role == Role::Trusted;
      if (subject_trusted ? d < 0.6 : d > 0.4) ++failures;
      ++total;
    }
  }
  if (total == 0) throw std::domain_error("no trusted-evaluator pairs to assess");
  return static_cast<double>(failures) / static_cast<double>(total);
}

struct SweepConfig {
  GridConfig grid;
  VoteParams vote;
  std::vector<double> alphas = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<double> degree_targets = {6.5, 2.2};
  int replicates = 200;
  std::uint64_t master_seed = 1;

  void validate() const {
    grid.validate();
    vote.validate();
    if (alphas.empty()) throw std::domain_error("alphas must be nonempty");
    for (double a : alphas)
      if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("alpha outside [0, 1]");
    if (degree_targets.empty()) throw std::domain_error("degree_targets must be nonempty");
    for (double t : degree_targets) {
      if (!(t > 0.0)) throw std::domain_error("degree target must be positive");
      if (t > full_grid_average_degree(grid.rows, grid.cols) + 1e-12)
        throw std::domain_error("degree target above grid maximum");
    }
    if (replicates < 1) throw std::domain_error("replicates must be positive");
  }

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct SweepCell {
  double alpha = 0.0;
  double degree_target = 0.0;
  double mean_realized_degree = 0.0;
  double mean_failure = 0.0;
  double std_failure = 0.0;  // sample standard deviation across replicates
  int replicates = 0;
};

// Builds one random world per (degree target, replicate): full grid, thinned,
// roles assigned, direct trust sampled. Streams hang off
// master.fork("world", degree_index, replicate), so worlds are identical for
// every alpha — the sweep is a paired design — and independent of scheduling.
inline AsGraph build_sweep_world(const GridConfig& grid, double degree_target,
                                 const RandomStream& world_rng) {
  GridConfig gc = grid;
  gc.target_avg_degree = degree_target;
  AsGraph g = generate_grid(gc);
  {
    RandomStream r = world_rng.fork("thin");
    g = thin_links(std::move(g), degree_target, r);
  }
  {
    RandomStream r = world_rng.fork("roles");
    g = assign_roles(std::move(g), gc.distrusted_fraction, r);
  }
  {
    RandomStream r = world_rng.fork("trust");
    g = sample_direct_trust(std::move(g), gc, r);
  }
  return g;
}

// Monte Carlo sweep of detection failure over (alpha, degree target). Jobs
// are (degree target, replicate); workers pull jobs from a shared counter and
// write into preallocated slots, and aggregation runs in a fixed order
// afterwards, so results are identical for any worker count. Returned cells
// are alpha-major: all degree targets for alphas[0], then alphas[1], ...
inline std::vector<SweepCell> run_alpha_sweep(const SweepConfig& cfg, int workers = 1) {
  cfg.validate();
  if (workers < 1) throw std::domain_error("workers must be positive");
  const int na = static_cast<int>(cfg.alphas.size());
  const int nd = static_cast<int>(cfg.degree_targets.size());
  const int nr = cfg.replicates;
  const int njobs = nd * nr;
  std::vector<double> failure(static_cast<std::size_t>(njobs) * na, 0.0);
  std::vector<double> realized(njobs, 0.0);
  const RandomStream master(cfg.master_seed);
  const auto run_job = [&](int j) {
    const int d = j / nr;
    const int rep = j % nr;
    const RandomStream world_rng = master.fork("world", d, rep);
    const AsGraph g = build_sweep_world(cfg.grid, cfg.degree_targets[d], world_rng);
    realized[j] = average_degree(g);
    const TrustState base = init_state(g);
    for (int a = 0; a < na; ++a) {
      VoteParams vp = cfg.vote;
      vp.alpha = cfg.alphas[a];
      TrustState st = base;
      for (int round = 0; round < vp.rounds; ++round)
        st = run_vote_round(g, vp, st, world_rng.fork("votes", round));
      failure[static_cast<std::size_t>(j) * na + a] = detection_failures(g, st);
    }
  };
  if (workers == 1) {
    for (int j = 0; j < njobs; ++j) run_job(j);
  } else {
    std::atomic<int> next_job{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const int j = next_job.fetch_add(1);
          if (j >= njobs) break;
          run_job(j);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }
  std::vector<SweepCell> cells;
  cells.reserve(static_cast<std::size_t>(na) * nd);
  for (int a = 0; a < na; ++a) {
    for (int d = 0; d < nd; ++d) {
      double mean = 0.0;
      double deg = 0.0;
      for (int rep = 0; rep < nr; ++rep) {
        mean += failure[static_cast<std::size_t>(d * nr + rep) * na + a];
        deg += realized[d * nr + rep];
      }
      mean /= nr;
      deg /= nr;
      double var = 0.0;
      for (int rep = 0; rep < nr; ++rep) {
        const double x = failure[static_cast<std::size_t>(d * nr + rep) * na + a] - mean;
        var += x * x;
      }
      SweepCell c;
      c.alpha = cfg.alphas[a];
      c.degree_target = cfg.degree_targets[d];
      c.mean_realized_degree = deg;
      c.mean_failure = mean;
      c.std_failure = nr > 1 ? std::sqrt(var / (nr - 1)) : 0.0;
      c.replicates = nr;
      cells.push_back(c);
    }
  }
  return cells;
}

}  // namespace tbgp
