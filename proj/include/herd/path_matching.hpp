#pragma once

#include <optional>
#include <set>
#include <vector>

#include "herd/layered_graph.hpp"
#include "herd/realization.hpp"
#include "herd/scalar.hpp"
#include "herd/signed_digraph.hpp"

namespace herd {

/// Per-layer outcome of path-sign matching. `positive`/`negative` split the
/// layer's nodes by the sign of their walk-weight sum; `degenerate` holds
/// nodes whose sum cancels exactly. `matched` is the chosen class extended by
/// every node with at least one walk of the chosen sign.
struct LayerMatch {
  int layer = 0;
  std::optional<Sign> sign;
  std::set<NodeId> positive;
  std::set<NodeId> negative;
  std::set<NodeId> degenerate;
  std::set<NodeId> matched;
};

struct SnapshotMatch {
  int snapshot = 1;
  std::vector<LayerMatch> layers;
  /// Nodes matched in this snapshot. From the second snapshot on, only
  /// nodes still unmatched before it are counted.
  std::set<NodeId> matched;
  std::set<NodeId> degenerate;
  /// Nodes unmatched after this snapshot.
  std::set<NodeId> residual;
};

struct PathMatchReport {
  std::vector<SnapshotMatch> snapshots;
};

/// Matching for one snapshot. Without `residual` the larger sign class wins
/// per layer (ties go positive). With it, classes are ranked by how many
/// residual nodes they reach, then by size, then positive first, and the
/// matched set is restricted to the residual nodes.
template <typename Scalar>
SnapshotMatch path_sign_matched_sets(const Realization<Scalar>& r, const InputPattern<Scalar>& input = {},
                                     const std::set<NodeId>* residual = nullptr) {
  const auto lg = build_layered_graph(r, input);
  SnapshotMatch out;
  std::set<NodeId> covered;
  for (int k = 1; k <= lg.depth(); ++k) {
    LayerMatch lm;
    lm.layer = k;
    std::set<NodeId> has_pos, has_neg;
    for (const auto& occ : lg.layer(k)) (occ.sign == Sign::kPositive ? has_pos : has_neg).insert(occ.node);
    for (NodeId v : layer_nodes(lg, k)) {
      const int s = sign_of(walk_weight_sum(lg, v, k));
      if (s > 0)
        lm.positive.insert(v);
      else if (s < 0)
        lm.negative.insert(v);
      else
        lm.degenerate.insert(v);
    }
    if (!lm.positive.empty() || !lm.negative.empty()) {
      auto extended = [&](const std::set<NodeId>& cls, const std::set<NodeId>& walks) {
        std::set<NodeId> m = cls;
        for (NodeId v : walks)
          if (!lm.degenerate.contains(v)) m.insert(v);
        return m;
      };
      const auto pos = extended(lm.positive, has_pos);
      const auto neg = extended(lm.negative, has_neg);
      auto reach = [&](const std::set<NodeId>& m) {
        std::size_t c = 0;
        if (residual != nullptr)
          for (NodeId v : m) c += residual->contains(v);
        return c;
      };
      bool choose_pos;
      if (reach(pos) != reach(neg))
        choose_pos = reach(pos) > reach(neg);
      else
        choose_pos = lm.positive.size() >= lm.negative.size();
      lm.sign = choose_pos ? Sign::kPositive : Sign::kNegative;
      lm.matched = choose_pos ? pos : neg;
      if (residual != nullptr) {
        std::set<NodeId> kept;
        for (NodeId v : lm.matched)
          if (residual->contains(v)) kept.insert(v);
        lm.matched = std::move(kept);
      }
    }
    out.matched.insert(lm.matched.begin(), lm.matched.end());
    out.degenerate.insert(lm.degenerate.begin(), lm.degenerate.end());
    out.layers.push_back(std::move(lm));
  }
  const std::set<NodeId> before = [&] {
    if (residual != nullptr) return *residual;
    std::set<NodeId> all;
    for (NodeId v = 1; v <= r.size(); ++v) all.insert(v);
    return all;
  }();
  for (NodeId v : before)
    if (!out.matched.contains(v)) out.residual.insert(v);
  return out;
}

/// Chains snapshot matches through a temporal network: snapshot 1 uses the
/// larger-class rule, later snapshots target the remaining residual.
template <typename Scalar>
PathMatchReport match_snapshots(const TemporalNetwork<Scalar>& tn) {
  PathMatchReport report;
  for (std::size_t i = 0; i < tn.size(); ++i) {
    const std::set<NodeId>* residual = i == 0 ? nullptr : &report.snapshots.back().residual;
    auto sm = path_sign_matched_sets(tn.snapshot(i).realization, tn.input(), residual);
    sm.snapshot = static_cast<int>(i + 1);
    report.snapshots.push_back(std::move(sm));
  }
  return report;
}

/// Nodes of one layer that should receive a matching edge of `sign`.
struct LayerTarget {
  int layer = 0;
  Sign sign = Sign::kPositive;
  std::set<NodeId> nodes;
};

struct MatchingEdge {
  NodeId node = 0;
  int layer = 0;
  std::size_t edge = 0;

  friend bool operator==(const MatchingEdge&, const MatchingEdge&) = default;
};

/// For each targeted node, the final edge of one of its walks of the target
/// sign: smallest parent node id first, then earliest occurrence. Throws
/// UnmatchableError when a node has no such walk in its layer.
template <typename Scalar>
std::vector<MatchingEdge> select_matching_edges(const LayeredGraph<Scalar>& lg,
                                                const std::vector<LayerTarget>& targets) {
  std::vector<MatchingEdge> out;
  for (const auto& t : targets) {
    if (t.layer < 2) continue;  // the leader has no in-edge to match
    const auto& layer = lg.layer(t.layer);
    const auto& parents = lg.layer(t.layer - 1);
    for (NodeId v : t.nodes) {
      int best = -1;
      for (std::size_t i = 0; i < layer.size(); ++i) {
        const auto& occ = layer[i];
        if (occ.node != v || occ.sign != t.sign) continue;
        if (best < 0 || parents[occ.parent].node < parents[layer[best].parent].node) best = static_cast<int>(i);
      }
      if (best < 0)
        throw UnmatchableError("node " + std::to_string(v) + " has no " +
                               (t.sign == Sign::kPositive ? "positive" : "negative") + " walk of length " +
                               std::to_string(t.layer - 1));
      out.push_back({v, t.layer, *layer[best].edge});
    }
  }
  return out;
}

/// Separated weights: matching edges at 10 d, every other edge at
/// d / (2 + edge index), signs from the graph.
struct RealizationPlan {
  Rational d{10};
  std::vector<LayerTarget> targets;
  std::vector<MatchingEdge> matching;
  std::vector<Rational> magnitudes;

  std::set<std::size_t> matching_edge_set() const;
};

inline const Rational kDefaultSeparation{10};

RealizationPlan make_plan(const SignedDigraph& g, std::vector<LayerTarget> targets, const Rational& d);

/// Layer targets for snapshot 1 (no residual) or a later snapshot. A node
/// qualifies for a sign when it has at least one walk of that sign.
std::vector<LayerTarget> choose_targets(const LayeredGraph<double>& lg, const std::set<NodeId>* residual);

struct SynthesisResult {
  std::vector<RealizationPlan> plans;
  std::vector<Realization<Rational>> realizations;
  PathMatchReport report;
  /// Nodes still unmatched after the last snapshot.
  std::set<NodeId> residual;
};

/// Plans p snapshots: the first matches the larger class per layer, each
/// later one targets the nodes left over. Never throws for leftovers.
SynthesisResult synthesize_snapshots(std::shared_ptr<const SignedDigraph> g, int p,
                                     const Rational& d = kDefaultSeparation);

/// Two-snapshot synthesis; throws SynthesisImpossibleError naming the nodes
/// that remain unmatched.
SynthesisResult synthesize_two_snapshots(std::shared_ptr<const SignedDigraph> g,
                                         const Rational& d = kDefaultSeparation);

}  // namespace herd
