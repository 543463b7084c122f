#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace herd {

/// Node ids are 1-based, as in graph documents. Matrix rows are id - 1.
using NodeId = int;

enum class Sign : int { kNegative = -1, kPositive = 1 };

inline int to_int(Sign s) { return static_cast<int>(s); }
inline Sign operator*(Sign a, Sign b) {
  return to_int(a) * to_int(b) > 0 ? Sign::kPositive : Sign::kNegative;
}
inline Sign flip(Sign s) { return s == Sign::kPositive ? Sign::kNegative : Sign::kPositive; }
inline char to_char(Sign s) { return s == Sign::kPositive ? '+' : '-'; }

/// Directed edge from -> to; corresponds to matrix entry A(to, from) != 0.
struct SignedEdge {
  NodeId from = 0;
  NodeId to = 0;
  Sign sign = Sign::kPositive;

  friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
};

struct GraphOptions {
  bool allow_self_loops = false;

  friend bool operator==(const GraphOptions&, const GraphOptions&) = default;
};

/// Fixed topology and sign pattern shared by every snapshot of a temporal
/// network. Immutable after construction. Edges are kept sorted by
/// (from, to); an edge's position in that order is its "edge index".
class SignedDigraph {
 public:
  /// Throws StructuralError for n < 1, out-of-range ids, or duplicate edges.
  SignedDigraph(int node_count, std::vector<SignedEdge> edges, NodeId leader = 1,
                GraphOptions options = {});

  int node_count() const { return node_count_; }
  NodeId leader() const { return leader_; }
  const GraphOptions& options() const { return options_; }
  std::span<const SignedEdge> edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  const SignedEdge& edge(std::size_t index) const { return edges_.at(index); }

  std::optional<std::size_t> edge_index(NodeId from, NodeId to) const;

  /// Edge indices leaving `node`, ordered by target id.
  const std::vector<std::size_t>& out_edges(NodeId node) const;
  /// Edge indices entering `node`, ordered by source id.
  const std::vector<std::size_t>& in_edges(NodeId node) const;

  friend bool operator==(const SignedDigraph& a, const SignedDigraph& b) {
    return a.node_count_ == b.node_count_ && a.leader_ == b.leader_ &&
           a.options_ == b.options_ && a.edges_ == b.edges_;
  }

 private:
  int node_count_;
  NodeId leader_;
  GraphOptions options_;
  std::vector<SignedEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

struct Violation {
  enum class Kind { kLeaderHasInEdge, kUnreachable, kSelfLoop };
  Kind kind;
  NodeId node;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool admissible() const { return violations.empty(); }
};

/// Leader autonomy, input-connectedness, and the self-loop policy.
ValidationReport validate(const SignedDigraph& g);

/// Throws StructuralError carrying the first violation when `g` is not
/// admissible. Used as a precondition guard by the analyses.
void require_admissible(const SignedDigraph& g);

/// Nodes whose outgoing edges carry both signs.
std::set<NodeId> detect_signed_dilations(const SignedDigraph& g);

/// Nodes reachable from the leader by a directed walk (leader included).
std::vector<bool> reachable_from_leader(const SignedDigraph& g);

/// FNV-1a 64 over a canonical text of the graph, as 16 hex digits.
std::string instance_digest(const SignedDigraph& g);

}  // namespace herd
