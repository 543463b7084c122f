#include "herd/signed_digraph.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <deque>

#include "herd/errors.hpp"

namespace herd {

SignedDigraph::SignedDigraph(int node_count, std::vector<SignedEdge> edges, NodeId leader,
                             GraphOptions options)
    : node_count_(node_count), leader_(leader), options_(options), edges_(std::move(edges)) {
  if (node_count_ < 1) throw StructuralError("node count must be at least 1");
  if (leader_ < 1 || leader_ > node_count_)
    throw StructuralError("leader " + std::to_string(leader_) + " is out of range 1.." +
                          std::to_string(node_count_));
  for (const auto& e : edges_) {
    if (e.from < 1 || e.from > node_count_ || e.to < 1 || e.to > node_count_)
      throw StructuralError("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) +
                            " has an endpoint outside 1.." + std::to_string(node_count_));
  }
  std::sort(edges_.begin(), edges_.end(), [](const SignedEdge& a, const SignedEdge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].from == edges_[i - 1].from && edges_[i].to == edges_[i - 1].to)
      throw StructuralError("duplicate edge " + std::to_string(edges_[i].from) + "->" +
                            std::to_string(edges_[i].to));
  }
  out_.resize(node_count_ + 1);
  in_.resize(node_count_ + 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    out_[edges_[i].from].push_back(i);
    in_[edges_[i].to].push_back(i);
  }
  // Sorted edge order already orders out-lists by target; in-lists by source.
}

std::optional<std::size_t> SignedDigraph::edge_index(NodeId from, NodeId to) const {
  if (from < 1 || from > node_count_) return std::nullopt;
  for (std::size_t i : out_[from])
    if (edges_[i].to == to) return i;
  return std::nullopt;
}

const std::vector<std::size_t>& SignedDigraph::out_edges(NodeId node) const {
  return out_.at(node);
}

const std::vector<std::size_t>& SignedDigraph::in_edges(NodeId node) const {
  return in_.at(node);
}

std::vector<bool> reachable_from_leader(const SignedDigraph& g) {
  std::vector<bool> seen(g.node_count() + 1, false);
  std::deque<NodeId> queue{g.leader()};
  seen[g.leader()] = true;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (std::size_t e : g.out_edges(u)) {
      const NodeId v = g.edge(e).to;
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

ValidationReport validate(const SignedDigraph& g) {
  ValidationReport report;
  for (const auto& e : g.edges()) {
    if (e.from == e.to && !g.options().allow_self_loops) {
      report.violations.push_back({Violation::Kind::kSelfLoop, e.from,
                                   "self-loop on node " + std::to_string(e.from)});
    }
  }
  for (std::size_t i : g.in_edges(g.leader())) {
    const auto& e = g.edge(i);
    if (e.from == e.to) continue;  // leader self-loop is governed by the self-loop policy
    report.violations.push_back({Violation::Kind::kLeaderHasInEdge, g.leader(),
                                 "edge " + std::to_string(e.from) + "->" + std::to_string(e.to) +
                                     " terminates at the leader"});
  }
  const auto seen = reachable_from_leader(g);
  for (NodeId v = 1; v <= g.node_count(); ++v) {
    if (!seen[v])
      report.violations.push_back(
          {Violation::Kind::kUnreachable, v, "node " + std::to_string(v) + " unreachable"});
  }
  return report;
}

void require_admissible(const SignedDigraph& g) {
  const auto report = validate(g);
  if (!report.admissible())
    throw StructuralError("graph is not admissible: " + report.violations.front().message);
}

std::set<NodeId> detect_signed_dilations(const SignedDigraph& g) {
  std::set<NodeId> out;
  for (NodeId v = 1; v <= g.node_count(); ++v) {
    bool pos = false, neg = false;
    for (std::size_t e : g.out_edges(v)) (g.edge(e).sign == Sign::kPositive ? pos : neg) = true;
    if (pos && neg) out.insert(v);
  }
  return out;
}

std::string instance_digest(const SignedDigraph& g) {
  std::string text = "n " + std::to_string(g.node_count()) + " leader " + std::to_string(g.leader()) +
                     " loops " + (g.options().allow_self_loops ? "1" : "0") + "\n";
  for (const auto& e : g.edges())
    text += std::to_string(e.from) + ' ' + std::to_string(e.to) + ' ' + to_char(e.sign) + '\n';
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace herd
