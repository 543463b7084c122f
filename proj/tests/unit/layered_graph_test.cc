#include "herd/layered_graph.hpp"

#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "herd/linalg.hpp"
#include "test_graphs.hpp"

namespace herd {
namespace {

using testing::N;
using testing::P;

// Independent oracle: depth-first enumeration of every walk of length
// `length` from the leader, collecting (end node, sign, weight).
struct Walk {
  NodeId end;
  Sign sign;
  double weight;
};

std::vector<Walk> enumerate_walks(const SignedDigraph& g, const Matrix<double>& a, int length) {
  std::vector<Walk> out;
  std::function<void(NodeId, Sign, double, int)> rec = [&](NodeId v, Sign s, double w, int left) {
    if (left == 0) {
      out.push_back({v, s, w});
      return;
    }
    for (const auto& e : g.edges())
      if (e.from == v) rec(e.to, s * e.sign, w * a(e.to - 1, e.from - 1), left - 1);
  };
  rec(g.leader(), Sign::kPositive, 1.0, length);
  return out;
}

std::shared_ptr<const SignedDigraph> random_graph(std::mt19937& rng, int n) {
  std::vector<SignedEdge> edges;
  std::bernoulli_distribution coin(0.5), extra(0.3);
  for (int v = 2; v <= n; ++v) {
    std::uniform_int_distribution<int> parent(1, v - 1);
    edges.push_back({parent(rng), v, coin(rng) ? P : N});
  }
  for (int u = 2; u <= n; ++u)
    for (int v = 2; v <= n; ++v) {
      if (u == v) continue;
      bool present = false;
      for (const auto& e : edges) present |= e.from == u && e.to == v;
      if (!present && extra(rng)) edges.push_back({u, v, coin(rng) ? P : N});
    }
  return testing::make_graph(n, edges);
}

TEST(LayeredGraphTest, Fig3Layers) {
  const auto g = testing::fig3();
  const auto lg = build_layered_graph(*g);
  ASSERT_EQ(lg.depth(), 7);
  ASSERT_EQ(lg.layer(1).size(), 1u);
  EXPECT_EQ(lg.layer(1)[0].node, 1);
  EXPECT_EQ(lg.layer(1)[0].sign, P);
  EXPECT_EQ(layer_nodes(lg, 2), std::set<NodeId>({2, 3, 4}));
  EXPECT_EQ(layer_nodes(lg, 3), std::set<NodeId>({5, 6, 7}));
  EXPECT_TRUE(lg.layer(4).empty());
  EXPECT_EQ(walk_sign_multiset(lg, 2, 2), std::multiset<Sign>({P}));
  EXPECT_EQ(walk_sign_multiset(lg, 3, 2), std::multiset<Sign>({N}));
  EXPECT_EQ(walk_sign_multiset(lg, 5, 3), std::multiset<Sign>({P}));
  EXPECT_EQ(walk_sign_multiset(lg, 6, 3), std::multiset<Sign>({N}));
  EXPECT_EQ(walk_sign_multiset(lg, 7, 3), std::multiset<Sign>({P}));
}

TEST(LayeredGraphTest, SingleNode) {
  const SignedDigraph g(1, {});
  const auto lg = build_layered_graph(g);
  ASSERT_EQ(lg.depth(), 1);
  EXPECT_EQ(lg.layer(1).size(), 1u);
  EXPECT_EQ(walk_sign_multiset(lg, 1, 1), std::multiset<Sign>({P}));
}

TEST(LayeredGraphTest, CycleIsTruncatedAtNLayers) {
  const SignedDigraph g(3, {{1, 2, P}, {2, 3, P}, {3, 2, N}});
  const auto lg = build_layered_graph(g);
  ASSERT_EQ(lg.depth(), 3);
  EXPECT_EQ(layer_nodes(lg, 2), std::set<NodeId>({2}));
  EXPECT_EQ(layer_nodes(lg, 3), std::set<NodeId>({3}));
  const SignedDigraph longer(4, {{1, 2, P}, {2, 3, P}, {3, 2, N}, {3, 4, P}});
  const auto lg4 = build_layered_graph(longer);
  EXPECT_EQ(walk_sign_multiset(lg4, 2, 4), std::multiset<Sign>({N}));
}

TEST(LayeredGraphTest, WalkSignMultisets) {
  EXPECT_EQ(walk_sign_multiset(build_layered_graph(*testing::fig2a()), 3, 2), std::multiset<Sign>({N}));
  // As drawn, both length-2 walks into node 5 are negative; the mixed variant has one of each.
  EXPECT_EQ(walk_sign_multiset(build_layered_graph(*testing::fig4()), 5, 3), std::multiset<Sign>({N, N}));
  EXPECT_EQ(walk_sign_multiset(build_layered_graph(*testing::fig4_mixed()), 5, 3),
            std::multiset<Sign>({P, N}));
  EXPECT_TRUE(walk_sign_multiset(build_layered_graph(*testing::fig2a()), 2, 3).empty());
}

TEST(LayeredGraphTest, WalkWeightSums) {
  const auto g = testing::fig2a();
  const auto r = Realization<Rational>::unit(g);
  const auto lg = build_layered_graph(r);
  EXPECT_EQ(walk_weight_sum(lg, 2, 2), Rational(1));
  EXPECT_EQ(walk_weight_sum(lg, 2, 3), Rational(0));

  const auto b = testing::fig2b();
  const auto rb = testing::realize<Rational>(b, {2, 3, 5, 7, 11});
  EXPECT_EQ(walk_weight_sum(build_layered_graph(rb), 4, 3), Rational(2 * 5));
  EXPECT_EQ(walk_weight_sum(build_layered_graph(rb, InputPattern<Rational>(Rational(3))), 6, 3),
            Rational(3 * -3 * 11));

  EXPECT_THROW(walk_weight_sum(build_layered_graph(*g), 2, 2), MissingRealizationError);
  EXPECT_THROW(build_layered_graph<Rational>(*testing::fig1a(), &r), RealizationMismatchError);
}

TEST(LayeredGraphTest, LayerDilations) {
  EXPECT_EQ(detect_layer_dilations(build_layered_graph(*testing::fig1b())), std::set<int>({2}));
  EXPECT_TRUE(detect_layer_dilations(build_layered_graph(*testing::chain(3))).empty());
  EXPECT_TRUE(detect_layer_dilations(build_layered_graph(*testing::fig4())).contains(2));
}

TEST(LayeredGraphTest, OccurrenceCapThrows) {
  // Complete digraph on the followers: walk counts grow geometrically.
  std::vector<SignedEdge> edges;
  for (int v = 2; v <= 7; ++v) edges.push_back({1, v, P});
  for (int u = 2; u <= 7; ++u)
    for (int v = 2; v <= 7; ++v)
      if (u != v) edges.push_back({u, v, P});
  const SignedDigraph g(7, edges);
  EXPECT_THROW(build_layered_graph(g, 100), SizeError);
  EXPECT_NO_THROW(build_layered_graph(g));
}

TEST(LayeredGraphTest, DumpFormat) {
  const auto lg = build_layered_graph(Realization<Rational>::unit(testing::fig1a()));
  EXPECT_EQ(dump_layered_graph(lg), "1 1 + 1 -\n2 2 + 1 0\n2 3 - -1 0\n");
}

// Brute-force cross-checks on random graphs with n <= 6.
TEST(LayeredGraphTest, RandomGraphsMatchWalkOracleAndMatrixPowers) {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 5;
    const auto g = random_graph(rng, n);
    ASSERT_TRUE(validate(*g).admissible());
    std::vector<double> w;
    for (std::size_t i = 0; i < g->edge_count(); ++i) w.push_back(mag(rng));
    const auto r = Realization<double>::from_magnitudes(g, w);
    const double b1 = 1.5;
    const auto lg = build_layered_graph(r, InputPattern<double>(b1));
    const Matrix<double> c = controllability_matrix(r, InputPattern<double>(b1));

    // Unsigned adjacency powers count walks.
    Matrix<double> adj = Matrix<double>::Zero(n, n);
    for (const auto& e : g->edges()) adj(e.to - 1, e.from - 1) = 1;
    Vector<double> count = Vector<double>::Zero(n);
    count(0) = 1;
    std::set<NodeId> seen;
    for (int k = 1; k <= n; ++k) {
      EXPECT_EQ(static_cast<double>(lg.layer(k).size()), count.sum());
      const auto walks = enumerate_walks(*g, r.matrix(), k - 1);
      EXPECT_EQ(walks.size(), lg.layer(k).size());
      for (NodeId v = 1; v <= n; ++v) {
        std::multiset<Sign> signs;
        double sum = 0;
        for (const auto& walk : walks)
          if (walk.end == v) {
            signs.insert(walk.sign);
            sum += walk.weight * b1;
          }
        EXPECT_EQ(walk_sign_multiset(lg, v, k), signs);
        EXPECT_NEAR(walk_weight_sum(lg, v, k), sum, 1e-12 * (1 + std::abs(sum)));
        EXPECT_NEAR(walk_weight_sum(lg, v, k), c(v - 1, k - 1), 1e-12 * (1 + std::abs(sum)));
      }
      for (const auto& occ : lg.layer(k)) {
        seen.insert(occ.node);
        if (k > 1) {
          const auto& parent = lg.layer(k - 1).at(occ.parent);
          EXPECT_TRUE(g->edge_index(parent.node, occ.node).has_value());
        }
      }
      count = adj * count;
    }
    EXPECT_EQ(static_cast<int>(seen.size()), n);
  }
}

}  // namespace
}  // namespace herd
