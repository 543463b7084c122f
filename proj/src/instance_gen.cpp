#include "herd/instance_gen.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "herd/errors.hpp"
#include "herd/layered_graph.hpp"

namespace herd {

std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::kTree:
      return "tree";
    case Topology::kLayeredDag:
      return "layered-dag";
    case Topology::kGeneral:
      return "general";
  }
  return "tree";
}

std::string_view to_string(SignPolicy s) {
  switch (s) {
    case SignPolicy::kAllPositive:
      return "all-positive";
    case SignPolicy::kRandom:
      return "random";
    case SignPolicy::kForceSignedDilation:
      return "force-signed-dilation";
    case SignPolicy::kForceLayerDilation:
      return "force-layer-dilation";
  }
  return "random";
}

Topology topology_from_string(std::string_view text) {
  for (Topology t : {Topology::kTree, Topology::kLayeredDag, Topology::kGeneral})
    if (to_string(t) == text) return t;
  throw SpecError("unknown topology '" + std::string(text) + "'");
}

SignPolicy sign_policy_from_string(std::string_view text) {
  for (SignPolicy s : {SignPolicy::kAllPositive, SignPolicy::kRandom, SignPolicy::kForceSignedDilation,
                       SignPolicy::kForceLayerDilation})
    if (to_string(s) == text) return s;
  throw SpecError("unknown sign policy '" + std::string(text) + "'");
}

namespace {

bool has_edge(const std::vector<SignedEdge>& edges, NodeId u, NodeId v) {
  return std::any_of(edges.begin(), edges.end(), [&](const SignedEdge& e) { return e.from == u && e.to == v; });
}

std::vector<SignedEdge> topology_edges(const GenSpec& spec, SplitMix64& rng) {
  const int n = spec.n;
  std::vector<SignedEdge> edges;
  auto sign = [&] {
    if (spec.signs == SignPolicy::kAllPositive) return Sign::kPositive;
    return rng.bernoulli(0.5) ? Sign::kPositive : Sign::kNegative;
  };
  switch (spec.topology) {
    case Topology::kTree:
    case Topology::kGeneral:
      for (NodeId v = 2; v <= n; ++v) {
        const NodeId parent = static_cast<NodeId>(rng.uniform_int(1, v - 1));
        edges.push_back({parent, v, sign()});
      }
      if (spec.topology == Topology::kGeneral) {
        for (NodeId u = 1; u <= n; ++u)
          for (NodeId v = 2; v <= n; ++v) {
            if (u == v || has_edge(edges, u, v)) continue;
            if (rng.bernoulli(0.15)) edges.push_back({u, v, sign()});
          }
      }
      break;
    case Topology::kLayeredDag: {
      std::vector<int> depth(n + 1, 0);
      for (NodeId v = 2; v <= n; ++v) {
        const NodeId parent = static_cast<NodeId>(rng.uniform_int(1, v - 1));
        depth[v] = depth[parent] + 1;
        edges.push_back({parent, v, sign()});
      }
      for (NodeId v = 2; v <= n; ++v)
        for (NodeId u = 1; u <= n; ++u) {
          if (depth[u] + 1 != depth[v] || has_edge(edges, u, v)) continue;
          if (rng.bernoulli(0.3)) edges.push_back({u, v, sign()});
        }
      break;
    }
  }
  return edges;
}

// Makes node 1 branch to node 3 when no node has two out-edges.
void ensure_branching(std::vector<SignedEdge>& edges, int n) {
  std::vector<int> out(n + 1, 0);
  for (const auto& e : edges) ++out[e.from];
  if (std::any_of(out.begin(), out.end(), [](int d) { return d >= 2; })) return;
  std::erase_if(edges, [](const SignedEdge& e) { return e.to == 3; });
  edges.push_back({1, 3, Sign::kPositive});
}

void force_signed_dilation(std::vector<SignedEdge>& edges, int n) {
  ensure_branching(edges, n);
  std::sort(edges.begin(), edges.end(),
            [](const SignedEdge& a, const SignedEdge& b) { return a.from != b.from ? a.from < b.from : a.to < b.to; });
  for (NodeId u = 1; u <= n; ++u) {
    std::vector<std::size_t> outs;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (edges[i].from == u) outs.push_back(i);
    if (outs.size() >= 2) {
      edges[outs[0]].sign = Sign::kPositive;
      edges[outs[1]].sign = Sign::kNegative;
      return;
    }
  }
}

void force_layer_dilation(std::vector<SignedEdge>& edges, int n) {
  ensure_branching(edges, n);
  const SignedDigraph g(n, edges);
  const auto lg = build_layered_graph(g);
  for (int k = 2; k <= lg.depth(); ++k) {
    const auto& layer = lg.layer(k);
    if (layer.size() < 2) continue;
    // Prefer two edges leaving different nodes, as in a pure layer dilation.
    const auto& prev = lg.layer(k - 1);
    std::size_t first = *layer[0].edge, second = first;
    for (const auto& occ : layer)
      if (prev[occ.parent].node != g.edge(first).from) {
        second = *occ.edge;
        break;
      }
    if (second == first)
      for (const auto& occ : layer)
        if (*occ.edge != first) {
          second = *occ.edge;
          break;
        }
    if (second == first) continue;
    const SignedEdge a = g.edge(first), b = g.edge(second);
    for (auto& e : edges) {
      if (e.from == a.from && e.to == a.to) e.sign = Sign::kPositive;
      if (e.from == b.from && e.to == b.to) e.sign = Sign::kNegative;
    }
    return;
  }
}

}  // namespace

SignedDigraph generate(const GenSpec& spec) {
  if (spec.n < 1) throw SpecError("n must be at least 1");
  if (spec.signs == SignPolicy::kForceSignedDilation && spec.n < 3)
    throw SpecError("a signed dilation needs at least 3 nodes");
  if (spec.signs == SignPolicy::kForceLayerDilation && spec.n < 4)
    throw SpecError("a layer dilation needs at least 4 nodes");
  SplitMix64 rng(spec.seed);
  auto edges = topology_edges(spec, rng);
  if (spec.signs == SignPolicy::kForceSignedDilation) force_signed_dilation(edges, spec.n);
  if (spec.signs == SignPolicy::kForceLayerDilation) force_layer_dilation(edges, spec.n);
  return SignedDigraph(spec.n, std::move(edges));
}

}  // namespace herd
