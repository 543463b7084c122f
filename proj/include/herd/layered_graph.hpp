#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "herd/errors.hpp"
#include "herd/realization.hpp"
#include "herd/scalar.hpp"
#include "herd/signed_digraph.hpp"

namespace herd {

inline constexpr std::size_t kDefaultOccurrenceCap = 1'000'000;

/// One walk from the leader, identified by its last node. `parent` indexes
/// the previous layer (-1 in the first layer); `edge` and `edge_sign`
/// describe the final step.
template <typename Scalar>
struct Occurrence {
  NodeId node = 0;
  Sign sign = Sign::kPositive;
  Scalar weight{1};
  int parent = -1;
  std::optional<std::size_t> edge;
  Sign edge_sign = Sign::kPositive;
};

/// Walk-length unrolling of a signed digraph from its leader. Layer k
/// (1-based) holds one occurrence per walk of length k - 1, so a node can
/// appear several times in a layer. There are exactly n layers; trailing
/// layers may be empty.
template <typename Scalar>
class LayeredGraph {
 public:
  using Layer = std::vector<Occurrence<Scalar>>;

  LayeredGraph(std::vector<Layer> layers, bool weighted)
      : layers_(std::move(layers)), weighted_(weighted) {}

  int depth() const { return static_cast<int>(layers_.size()); }
  const Layer& layer(int k) const {
    if (k < 1 || k > depth())
      throw InvalidArgumentError("layer " + std::to_string(k) + " outside 1.." + std::to_string(depth()));
    return layers_[k - 1];
  }
  const std::vector<Layer>& layers() const { return layers_; }

  /// False when built from the sign pattern alone; weights are then the
  /// products of edge signs.
  bool weighted() const { return weighted_; }

 private:
  std::vector<Layer> layers_;
  bool weighted_;
};

/// Enumerates every walk of length 0..n-1 from the leader. With a
/// realization, weights are b1 times the product of edge weights; without
/// one they are the product of signs. Throws SizeError when a layer exceeds
/// `cap` occurrences.
template <typename Scalar>
LayeredGraph<Scalar> build_layered_graph(const SignedDigraph& g, const Realization<Scalar>* weights,
                                         const InputPattern<Scalar>& input = {},
                                         std::size_t cap = kDefaultOccurrenceCap) {
  if (weights != nullptr && !(weights->graph() == g))
    throw RealizationMismatchError("realization belongs to a different sign pattern");
  const int n = g.node_count();
  std::vector<typename LayeredGraph<Scalar>::Layer> layers(n);
  Occurrence<Scalar> root;
  root.node = g.leader();
  root.weight = weights != nullptr ? input.leader_gain() : Scalar(1);
  layers[0].push_back(root);
  for (int k = 1; k < n; ++k) {
    const auto& prev = layers[k - 1];
    auto& next = layers[k];
    for (std::size_t i = 0; i < prev.size(); ++i) {
      for (std::size_t e : g.out_edges(prev[i].node)) {
        const auto& edge = g.edge(e);
        if (next.size() >= cap)
          throw SizeError("layer " + std::to_string(k + 1) + " exceeds " + std::to_string(cap) +
                          " walk occurrences");
        Occurrence<Scalar> occ;
        occ.node = edge.to;
        occ.sign = prev[i].sign * edge.sign;
        occ.weight = weights != nullptr ? Scalar(prev[i].weight * weights->weight(e))
                                        : Scalar(to_int(occ.sign));
        occ.parent = static_cast<int>(i);
        occ.edge = e;
        occ.edge_sign = edge.sign;
        next.push_back(std::move(occ));
      }
    }
  }
  return LayeredGraph<Scalar>(std::move(layers), weights != nullptr);
}

/// Sign-only layered graph.
inline LayeredGraph<double> build_layered_graph(const SignedDigraph& g,
                                                std::size_t cap = kDefaultOccurrenceCap) {
  return build_layered_graph<double>(g, nullptr, {}, cap);
}

template <typename Scalar>
LayeredGraph<Scalar> build_layered_graph(const Realization<Scalar>& r, const InputPattern<Scalar>& input = {},
                                         std::size_t cap = kDefaultOccurrenceCap) {
  return build_layered_graph<Scalar>(r.graph(), &r, input, cap);
}

/// Signs of all walks of length layer - 1 that end at `node`.
template <typename Scalar>
std::multiset<Sign> walk_sign_multiset(const LayeredGraph<Scalar>& lg, NodeId node, int layer) {
  std::multiset<Sign> out;
  if (layer < 1 || layer > lg.depth()) return out;
  for (const auto& occ : lg.layer(layer))
    if (occ.node == node) out.insert(occ.sign);
  return out;
}

/// Sum of walk weights into `node` at `layer`; equals entry `node` of
/// A^{layer-1} B. Throws MissingRealizationError on a sign-only graph.
template <typename Scalar>
Scalar walk_weight_sum(const LayeredGraph<Scalar>& lg, NodeId node, int layer) {
  if (!lg.weighted()) throw MissingRealizationError("walk weights need a realization");
  Scalar sum(0);
  if (layer < 1 || layer > lg.depth()) return sum;
  for (const auto& occ : lg.layer(layer))
    if (occ.node == node) sum += occ.weight;
  return sum;
}

/// Distinct nodes of a layer in increasing id order.
template <typename Scalar>
std::set<NodeId> layer_nodes(const LayeredGraph<Scalar>& lg, int layer) {
  std::set<NodeId> out;
  for (const auto& occ : lg.layer(layer)) out.insert(occ.node);
  return out;
}

/// Layers k whose edges into layer k + 1 carry both signs.
template <typename Scalar>
std::set<int> detect_layer_dilations(const LayeredGraph<Scalar>& lg) {
  std::set<int> out;
  for (int k = 2; k <= lg.depth(); ++k) {
    bool pos = false, neg = false;
    for (const auto& occ : lg.layer(k)) (occ.edge_sign == Sign::kPositive ? pos : neg) = true;
    if (pos && neg) out.insert(k - 1);
  }
  return out;
}

/// One line per occurrence: "layer node sign weight parent", parent as
/// "-" for the root.
template <typename Scalar>
std::string dump_layered_graph(const LayeredGraph<Scalar>& lg) {
  std::ostringstream os;
  for (int k = 1; k <= lg.depth(); ++k) {
    for (const auto& occ : lg.layer(k)) {
      os << k << ' ' << occ.node << ' ' << to_char(occ.sign) << ' ' << format_scalar(occ.weight) << ' ';
      if (occ.parent < 0)
        os << '-';
      else
        os << occ.parent;
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace herd
