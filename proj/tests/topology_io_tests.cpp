#include "tbgp/topology_io.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "tbgp/graph.hpp"

namespace tbgp {
namespace {

AsGraph tiny_graph() {
  AsGraph g;
  g.add_node("A");
  g.add_node("B", Role::Distrusted);
  g.add_edge("A", "B", TrustRate(0.9));
  g.add_edge("B", "A", TrustRate(0.25), 2.5);
  return g;
}

TEST(SaveTopology, ExactTextForm) {
  std::ostringstream os;
  save_topology(tiny_graph(), os);
  EXPECT_EQ(os.str(),
            "node A trusted\n"
            "node B distrusted\n"
            "edge A B 0.9\n"
            "edge B A 0.25 2.5\n");
}

TEST(SaveTopology, SortsNodesAndEdges) {
  AsGraph g;
  g.add_node("zeta");
  g.add_node("alpha");
  g.add_edge("zeta", "alpha", TrustRate(0.5));
  g.add_edge("alpha", "zeta", TrustRate(0.5));
  std::ostringstream os;
  save_topology(g, os);
  EXPECT_EQ(os.str(),
            "node alpha trusted\n"
            "node zeta trusted\n"
            "edge alpha zeta 0.5\n"
            "edge zeta alpha 0.5\n");
}

TEST(LoadTopology, RoundTripsTinyGraph) {
  std::ostringstream os;
  save_topology(tiny_graph(), os);
  std::istringstream is(os.str());
  EXPECT_TRUE(load_topology(is) == tiny_graph());
}

TEST(LoadTopology, RoundTripsSampledWorld) {
  // shortest round-trip formatting must reproduce sampled rates bit for bit
  GridConfig cfg;
  cfg.rows = 6;
  cfg.cols = 6;
  cfg.target_avg_degree = 5.0;
  RandomStream rng(21);
  RandomStream thin = rng.fork("thin");
  RandomStream roles = rng.fork("roles");
  RandomStream trust = rng.fork("trust");
  AsGraph g = thin_links(generate_grid(cfg), 4.0, thin);
  g = assign_roles(std::move(g), 0.2, roles);
  g = sample_direct_trust(std::move(g), cfg, trust);
  std::ostringstream os;
  save_topology(g, os);
  std::istringstream is(os.str());
  const AsGraph back = load_topology(is);
  ASSERT_EQ(back.size(), g.size());
  ASSERT_EQ(back.edge_count(), g.edge_count());
  for (int u = 0; u < g.size(); ++u) {
    EXPECT_EQ(back.node(back.require(g.node(u).id)).role, g.node(u).role);
    for (const OutEdge& e : g.out_edges(u)) {
      const OutEdge* b = back.edge(back.require(g.node(u).id), back.require(g.node(e.to).id));
      ASSERT_NE(b, nullptr);
      EXPECT_EQ(b->trust, e.trust);
      EXPECT_EQ(b->base_cost, e.base_cost);
    }
  }
}

TEST(LoadTopology, AcceptsCommentsAndBlankLines) {
  std::istringstream is(
      "# comment line\n"
      "\n"
      "node A trusted   # trailing comment\n"
      "node B trusted\n"
      "edge A B 0.5\n");
  const AsGraph g = load_topology(is);
  EXPECT_EQ(g.size(), 2);
  EXPECT_EQ(g.edge_count(), 1);
}

TEST(LoadTopology, EdgeMayPrecedeNodeDeclarations) {
  std::istringstream is(
      "edge A B 0.5\n"
      "node A trusted\n"
      "node B trusted\n");
  EXPECT_EQ(load_topology(is).edge_count(), 1);
}

TEST(LoadTopology, ThrowsWithLineNumber) {
  std::istringstream is("node A trusted\nnode B trusted\nedge A B 1.5\n");
  try {
    load_topology(is);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 3);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("outside [0, 1]"), std::string::npos);
  }
}

TEST(ValidateTopology, CollectsEveryProblem) {
  std::istringstream is(
      "node A trusted\n"
      "node A trusted\n"        // 2: duplicate node
      "node B sideways\n"       // 3: unknown role
      "wobble A B\n"            // 4: unknown directive
      "node C trusted\n"
      "edge A C 0.5 0\n"        // 6: bad base cost
      "edge A\n"                // 7: wrong token count
      "edge A C abc\n"          // 8: bad trust number
      "edge A D 0.5\n"          // 9: unknown endpoint
      "edge A C 0.5\n"
      "edge A C 0.6\n"          // 11: duplicate edge
      "edge C C 0.5\n");        // 12: self-loop
  const std::vector<Diagnostic> diags = validate_topology(is);
  ASSERT_EQ(diags.size(), 9u);
  EXPECT_EQ(diags[0].line, 2);
  EXPECT_EQ(diags[1].line, 3);
  EXPECT_EQ(diags[2].line, 4);
  EXPECT_EQ(diags[3].line, 6);
  EXPECT_EQ(diags[4].line, 7);
  EXPECT_EQ(diags[5].line, 8);
  EXPECT_EQ(diags[6].line, 9);
  EXPECT_NE(diags[6].message.find("unknown node 'D'"), std::string::npos);
  EXPECT_EQ(diags[7].line, 11);
  EXPECT_EQ(diags[8].line, 12);
}

TEST(ValidateTopology, SelfLoopReported) {
  std::istringstream is("node A trusted\nedge A A 0.5\n");
  const auto diags = validate_topology(is);
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0].line, 2);
  EXPECT_NE(diags[0].message.find("self-loop"), std::string::npos);
}

TEST(ValidateTopology, FillsOutputGraphOnlyWhenValid) {
  AsGraph g;
  std::istringstream bad("node A trusted\nnode A trusted\n");
  EXPECT_FALSE(validate_topology(bad, &g).empty());
  EXPECT_EQ(g.size(), 0);
  std::istringstream good("node A trusted\n");
  EXPECT_TRUE(validate_topology(good, &g).empty());
  EXPECT_EQ(g.size(), 1);
}

TEST(LoadTopologyFile, MissingFileThrows) {
  EXPECT_THROW(load_topology_file("/nonexistent/nowhere.topo"), std::runtime_error);
}

}  // namespace
}  // namespace tbgp
