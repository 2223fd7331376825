#include "tbgp/simulation.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace tbgp {
namespace {

TEST(TrustVariation, DefaultSeriesShape) {
  const auto points = run_trust_variation(VariationConfig{});
  ASSERT_EQ(points.size(), 10u);
  // endpoints land exactly on the configured values
  EXPECT_EQ(points.front().t1, 1.0);
  EXPECT_EQ(points.front().tau, 0.05);
  EXPECT_EQ(points.back().t1, 0.1);
  EXPECT_EQ(points.back().tau, 0.33);
  // first-hop trust falls linearly, far-link trust rises geometrically
  for (std::size_t i = 1; i < points.size(); ++i) {
    EXPECT_LT(points[i].t1, points[i - 1].t1);
    EXPECT_GT(points[i].tau, points[i - 1].tau);
  }
  // both models agree while the first hop is fully trusted
  EXPECT_NEAR(points.front().cost_direct, 21.0, 1e-9);
  EXPECT_NEAR(points.front().cost_recommended, 21.0, 1e-9);
  // and diverge as it degrades
  EXPECT_NEAR(points.back().cost_direct, 1.0 / 0.1 + 1.0 / 0.33, 1e-9);
  EXPECT_NEAR(points.back().cost_recommended, (1.0 + 1.0 / 0.33) / 0.1, 1e-9);
  EXPECT_NEAR(points.back().cost_direct, 13.0303, 5e-5);
  EXPECT_NEAR(points.back().cost_recommended, 40.3030, 5e-5);
}

TEST(TrustVariation, GapIdentityHoldsEveryStep) {
  // recommended − direct = (1/tau) * (1 − t1) / t1, and never negative
  const auto points = run_trust_variation(VariationConfig{});
  for (const VariationPoint& p : points) {
    const double gap = p.cost_recommended - p.cost_direct;
    EXPECT_NEAR(gap, (1.0 / p.tau) * (1.0 - p.t1) / p.t1, 1e-9);
    EXPECT_GE(gap, -1e-12);
  }
}

TEST(TrustVariation, SingleStepEmitsStartPoint) {
  VariationConfig cfg;
  cfg.steps = 1;
  const auto points = run_trust_variation(cfg);
  ASSERT_EQ(points.size(), 1u);
  EXPECT_EQ(points[0].t1, 1.0);
  EXPECT_EQ(points[0].tau, 0.05);
}

TEST(TrustVariation, Validation) {
  VariationConfig cfg;
  cfg.steps = 0;
  EXPECT_THROW(run_trust_variation(cfg), std::domain_error);
  cfg = VariationConfig{};
  cfg.t1_end = 0.0;
  EXPECT_THROW(run_trust_variation(cfg), std::domain_error);
  cfg = VariationConfig{};
  cfg.tau_start = 1.2;
  EXPECT_THROW(run_trust_variation(cfg), std::domain_error);
}

AsGraph detection_graph() {
  AsGraph g;
  g.add_node("T1", Role::Trusted);
  g.add_node("T2", Role::Trusted);
  g.add_node("D1", Role::Distrusted);
  g.add_edge("T1", "T2", TrustRate(0.5));
  g.add_edge("T1", "D1", TrustRate(0.5));
  g.add_edge("T2", "T1", TrustRate(0.5));
  g.add_edge("T2", "D1", TrustRate(0.5));
  g.add_edge("D1", "T1", TrustRate(0.5));  // distrusted evaluator: excluded
  return g;
}

TEST(DetectionFailures, CountsMisjudgedPairs) {
  const AsGraph g = detection_graph();
  TrustState st = init_state(g);
  st.set_derived(g, "T1", "T2", TrustRate(0.7));   // trusted rated high: ok
  st.set_derived(g, "T1", "D1", TrustRate(0.5));   // distrusted above 0.4: failure
  st.set_derived(g, "T2", "T1", TrustRate(0.55));  // trusted below 0.6: failure
  st.set_derived(g, "T2", "D1", TrustRate(0.2));   // distrusted rated low: ok
  EXPECT_NEAR(detection_failures(g, st), 2.0 / 4.0, 1e-12);
}

TEST(DetectionFailures, BoundaryRatesCountAsDetected) {
  const AsGraph g = detection_graph();
  TrustState st = init_state(g);
  st.set_derived(g, "T1", "T2", TrustRate(0.6));  // exactly 0.6: detected
  st.set_derived(g, "T1", "D1", TrustRate(0.4));  // exactly 0.4: detected
  st.set_derived(g, "T2", "T1", TrustRate(0.6));
  st.set_derived(g, "T2", "D1", TrustRate(0.4));
  EXPECT_EQ(detection_failures(g, st), 0.0);
}

TEST(DetectionFailures, MissingDerivedThrows) {
  const AsGraph g = detection_graph();
  EXPECT_THROW(detection_failures(g, init_state(g)), std::domain_error);
}

TEST(DetectionFailures, NoEligiblePairsThrows) {
  AsGraph g;
  g.add_node("D1", Role::Distrusted);
  g.add_node("D2", Role::Distrusted);
  g.add_edge("D1", "D2", TrustRate(0.5));
  EXPECT_THROW(detection_failures(g, init_state(g)), std::domain_error);
}

SweepConfig small_sweep() {
  SweepConfig cfg;
  cfg.grid.rows = 5;
  cfg.grid.cols = 5;
  cfg.grid.target_avg_degree = 4.0;
  cfg.alphas = {0.0, 0.5, 1.0};
  cfg.degree_targets = {4.0};
  cfg.replicates = 8;
  cfg.master_seed = 33;
  return cfg;
}

TEST(AlphaSweep, CellLayoutIsAlphaMajor) {
  SweepConfig cfg = small_sweep();
  cfg.degree_targets = {4.0, 2.0};
  const auto cells = run_alpha_sweep(cfg);
  ASSERT_EQ(cells.size(), 6u);
  EXPECT_EQ(cells[0].alpha, 0.0);
  EXPECT_EQ(cells[0].degree_target, 4.0);
  EXPECT_EQ(cells[1].alpha, 0.0);
  EXPECT_EQ(cells[1].degree_target, 2.0);
  EXPECT_EQ(cells[2].alpha, 0.5);
  EXPECT_EQ(cells[5].alpha, 1.0);
  for (const SweepCell& c : cells) {
    EXPECT_EQ(c.replicates, 8);
    EXPECT_GE(c.mean_failure, 0.0);
    EXPECT_LE(c.mean_failure, 1.0);
    EXPECT_GE(c.std_failure, 0.0);
    EXPECT_LE(c.mean_realized_degree, c.degree_target);
    EXPECT_GT(c.mean_realized_degree, c.degree_target - 0.5);
  }
}

TEST(AlphaSweep, DeterministicAcrossRunsAndWorkerCounts) {
  const SweepConfig cfg = small_sweep();
  const auto a = run_alpha_sweep(cfg, 1);
  const auto b = run_alpha_sweep(cfg, 1);
  const auto c = run_alpha_sweep(cfg, 3);
  ASSERT_EQ(a.size(), b.size());
  ASSERT_EQ(a.size(), c.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].mean_failure, b[i].mean_failure);
    EXPECT_EQ(a[i].std_failure, b[i].std_failure);
    EXPECT_EQ(a[i].mean_failure, c[i].mean_failure);
    EXPECT_EQ(a[i].std_failure, c[i].std_failure);
    EXPECT_EQ(a[i].mean_realized_degree, c[i].mean_realized_degree);
  }
}

TEST(AlphaSweep, MatchesManualReplicateReconstruction) {
  // the sweep is exactly: per replicate, build the world, run the rounds,
  // count failures; aggregate in replicate order
  SweepConfig cfg = small_sweep();
  cfg.alphas = {0.3};
  cfg.replicates = 4;
  const auto cells = run_alpha_sweep(cfg);
  ASSERT_EQ(cells.size(), 1u);
  const RandomStream master(cfg.master_seed);
  double mean = 0.0;
  for (int rep = 0; rep < cfg.replicates; ++rep) {
    const RandomStream world_rng = master.fork("world", 0, rep);
    const AsGraph g = build_sweep_world(cfg.grid, cfg.degree_targets[0], world_rng);
    VoteParams vp = cfg.vote;
    vp.alpha = 0.3;
    const TrustState st =
        run_vote_round(g, vp, init_state(g), world_rng.fork("votes", 0));
    mean += detection_failures(g, st);
  }
  EXPECT_EQ(cells[0].mean_failure, mean / cfg.replicates);
}

TEST(AlphaSweep, AlphaOneMatchesDirectMisjudgmentRate) {
  // at alpha = 1 the vote layer is inert: failures are exactly the direct
  // rates' misjudgments
  SweepConfig cfg = small_sweep();
  cfg.alphas = {1.0};
  cfg.replicates = 6;
  const auto cells = run_alpha_sweep(cfg);
  const RandomStream master(cfg.master_seed);
  double mean = 0.0;
  for (int rep = 0; rep < cfg.replicates; ++rep) {
    const AsGraph g =
        build_sweep_world(cfg.grid, cfg.degree_targets[0], master.fork("world", 0, rep));
    long fail = 0, total = 0;
    for (int u = 0; u < g.size(); ++u) {
      if (g.node(u).role != Role::Trusted) continue;
      for (const OutEdge& e : g.out_edges(u)) {
        const double t = e.trust.value();
        if (g.node(e.to).role == Role::Trusted ? t < 0.6 : t > 0.4) ++fail;
        ++total;
      }
    }
    mean += static_cast<double>(fail) / static_cast<double>(total);
  }
  EXPECT_EQ(cells[0].mean_failure, mean / cfg.replicates);
}

TEST(AlphaSweep, WorldsAreSharedAcrossAlphas) {
  // paired design: the realized degree column must be identical per degree
  // target no matter the alpha
  SweepConfig cfg = small_sweep();
  const auto cells = run_alpha_sweep(cfg);
  ASSERT_EQ(cells.size(), 3u);
  EXPECT_EQ(cells[0].mean_realized_degree, cells[1].mean_realized_degree);
  EXPECT_EQ(cells[0].mean_realized_degree, cells[2].mean_realized_degree);
}

TEST(AlphaSweep, Validation) {
  SweepConfig cfg = small_sweep();
  cfg.alphas = {};
  EXPECT_THROW(run_alpha_sweep(cfg), std::domain_error);
  cfg = small_sweep();
  cfg.alphas = {1.5};
  EXPECT_THROW(run_alpha_sweep(cfg), std::domain_error);
  cfg = small_sweep();
  cfg.degree_targets = {9.0};  // above the 5x5 maximum of 4.48
  EXPECT_THROW(run_alpha_sweep(cfg), std::domain_error);
  cfg = small_sweep();
  cfg.replicates = 0;
  EXPECT_THROW(run_alpha_sweep(cfg), std::domain_error);
  cfg = small_sweep();
  EXPECT_THROW(run_alpha_sweep(cfg, 0), std::domain_error);
}

TEST(BuildSweepWorld, DeterministicAndShaped) {
  GridConfig grid;  // 15x15 defaults
  const RandomStream rng = RandomStream(77).fork("world", 0, 3);
  const AsGraph a = build_sweep_world(grid, 6.5, rng);
  const AsGraph b = build_sweep_world(grid, 6.5, rng);
  EXPECT_TRUE(a == b);
  EXPECT_EQ(a.size(), 225);
  EXPECT_NEAR(average_degree(a), 2.0 * 731 / 225, 1e-12);
  int distrusted = 0;
  for (int i = 0; i < a.size(); ++i)
    if (a.node(i).role == Role::Distrusted) ++distrusted;
  EXPECT_EQ(distrusted, 45);
}

// Statistical anchors on the full-size world. Modest replicate counts keep
// this suite fast; the acceptance suite runs the full-scale versions.
TEST(AlphaSweep, DirectOnlyFailureNearAnalyticBaseline) {
  // at alpha = 1 each pair fails iff a clamped N(0.7, 0.2) lands below 0.6
  // (trusted subject) or a clamped N(0.3, 0.2) lands above 0.4 (distrusted) —
  // both probabilities are Phi(-0.5) ~ 0.3085
  SweepConfig cfg;
  cfg.alphas = {1.0};
  cfg.degree_targets = {6.5};
  cfg.replicates = 30;
  cfg.master_seed = 5;
  const auto cells = run_alpha_sweep(cfg);
  EXPECT_NEAR(cells[0].mean_failure, 0.3085, 0.02);
}

TEST(AlphaSweep, VotingHelpsAtModerateMixAndHighDegree) {
  SweepConfig cfg;
  cfg.alphas = {0.0, 0.4, 0.5, 1.0};
  cfg.degree_targets = {6.5};
  cfg.replicates = 40;
  cfg.master_seed = 11;
  const auto cells = run_alpha_sweep(cfg);
  ASSERT_EQ(cells.size(), 4u);
  const double f_votes = cells[0].mean_failure;   // alpha 0
  const double f_mix04 = cells[1].mean_failure;
  const double f_mix05 = cells[2].mean_failure;
  const double f_direct = cells[3].mean_failure;  // alpha 1
  EXPECT_LT(f_mix04, f_direct);
  EXPECT_LT(f_mix05, f_direct);
  EXPECT_LT(f_mix04, f_votes);
  EXPECT_LT(f_mix05, f_votes);
}

TEST(AlphaSweep, MoreAdversariesMeanMoreFailuresAtFullVoteWeight) {
  SweepConfig low;
  low.alphas = {0.0};
  low.degree_targets = {6.5};
  low.replicates = 25;
  low.master_seed = 13;
  SweepConfig high = low;
  high.grid.distrusted_fraction = 0.4;
  EXPECT_GT(run_alpha_sweep(high)[0].mean_failure, run_alpha_sweep(low)[0].mean_failure);
}

}  // namespace
}  // namespace tbgp
