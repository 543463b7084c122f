#pragma once

#include <memory>
#include <string>
#include <vector>

#include "herd/errors.hpp"
#include "herd/scalar.hpp"
#include "herd/signed_digraph.hpp"

namespace herd {

/// Input matrix B = e_leader * b1 with b1 > 0.
template <typename Scalar>
class InputPattern {
 public:
  InputPattern() = default;
  explicit InputPattern(Scalar leader_gain) : leader_gain_(std::move(leader_gain)) {
    if (!(leader_gain_ > 0)) throw InvalidArgumentError("leader gain b1 must be positive");
  }

  const Scalar& leader_gain() const { return leader_gain_; }

  template <typename To>
  InputPattern<To> cast() const {
    return InputPattern<To>(scalar_cast<To>(leader_gain_));
  }

 private:
  Scalar leader_gain_{1};
};

/// A weighted matrix consistent with a SignedDigraph: A(to, from) carries the
/// edge sign and is nonzero for every edge, zero elsewhere.
template <typename Scalar>
class Realization {
 public:
  /// Throws RealizationMismatchError when the sparsity or a sign disagrees
  /// with the graph.
  Realization(std::shared_ptr<const SignedDigraph> graph, Matrix<Scalar> a)
      : graph_(std::move(graph)), a_(std::move(a)) {
    check();
  }

  /// Builds A from per-edge magnitudes (indexed by edge index, all > 0);
  /// signs are copied from the graph.
  static Realization from_magnitudes(std::shared_ptr<const SignedDigraph> graph,
                                     const std::vector<Scalar>& magnitudes) {
    if (magnitudes.size() != graph->edge_count())
      throw RealizationMismatchError("expected " + std::to_string(graph->edge_count()) +
                                     " magnitudes, got " + std::to_string(magnitudes.size()));
    const int n = graph->node_count();
    Matrix<Scalar> a = Matrix<Scalar>::Zero(n, n);
    for (std::size_t i = 0; i < magnitudes.size(); ++i) {
      const auto& e = graph->edge(i);
      if (!(magnitudes[i] > 0))
        throw RealizationMismatchError("edge " + std::to_string(e.from) + "->" +
                                       std::to_string(e.to) + " needs a positive magnitude");
      a(e.to - 1, e.from - 1) = e.sign == Sign::kPositive ? magnitudes[i] : Scalar(-magnitudes[i]);
    }
    return Realization(std::move(graph), std::move(a));
  }

  /// Every edge at magnitude one.
  static Realization unit(std::shared_ptr<const SignedDigraph> graph) {
    return from_magnitudes(graph, std::vector<Scalar>(graph->edge_count(), Scalar(1)));
  }

  const SignedDigraph& graph() const { return *graph_; }
  const std::shared_ptr<const SignedDigraph>& shared_graph() const { return graph_; }
  const Matrix<Scalar>& matrix() const { return a_; }
  int size() const { return graph_->node_count(); }

  const Scalar& weight(std::size_t edge_index) const {
    const auto& e = graph_->edge(edge_index);
    return a_(e.to - 1, e.from - 1);
  }

  template <typename To>
  Realization<To> cast() const {
    return Realization<To>(graph_, matrix_cast<To>(a_));
  }

  friend bool operator==(const Realization& x, const Realization& y) {
    return *x.graph_ == *y.graph_ && x.a_ == y.a_;
  }

 private:
  void check() const {
    const int n = graph_->node_count();
    if (a_.rows() != n || a_.cols() != n)
      throw RealizationMismatchError("realization must be " + std::to_string(n) + "x" +
                                     std::to_string(n));
    Matrix<int> expected = Matrix<int>::Zero(n, n);
    for (const auto& e : graph_->edges()) expected(e.to - 1, e.from - 1) = to_int(e.sign);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int s = sign_of(a_(i, j));
        if (expected(i, j) == 0 && s != 0)
          throw RealizationMismatchError("weight given for non-edge " + std::to_string(j + 1) +
                                         "->" + std::to_string(i + 1));
        if (expected(i, j) != 0 && s == 0)
          throw RealizationMismatchError("edge " + std::to_string(j + 1) + "->" +
                                         std::to_string(i + 1) + " has zero weight");
        if (expected(i, j) != 0 && s != expected(i, j))
          throw RealizationMismatchError("edge " + std::to_string(j + 1) + "->" +
                                         std::to_string(i + 1) + " has the wrong sign");
      }
    }
  }

  std::shared_ptr<const SignedDigraph> graph_;
  Matrix<Scalar> a_;
};

template <typename Scalar>
struct Snapshot {
  Realization<Scalar> realization;
  Scalar duration;
};

/// Ordered snapshots (index 0 is the earliest interval) over one fixed
/// sign pattern, driven through the leader.
template <typename Scalar>
class TemporalNetwork {
 public:
  TemporalNetwork(std::vector<Snapshot<Scalar>> snapshots, InputPattern<Scalar> input = {})
      : snapshots_(std::move(snapshots)), input_(std::move(input)) {
    if (snapshots_.empty()) throw InvalidArgumentError("a temporal network needs p >= 1 snapshots");
    for (const auto& s : snapshots_) {
      if (!(s.realization.graph() == snapshots_.front().realization.graph()))
        throw RealizationMismatchError("all snapshots must share one sign pattern");
      if (!(s.duration > 0)) throw InvalidArgumentError("snapshot durations must be positive");
    }
  }

  /// p copies of one realization.
  static TemporalNetwork repeated(const Realization<Scalar>& r, const std::vector<Scalar>& durations,
                                  InputPattern<Scalar> input = {}) {
    std::vector<Snapshot<Scalar>> snaps;
    for (const auto& dt : durations) snaps.push_back({r, dt});
    return TemporalNetwork(std::move(snaps), std::move(input));
  }

  const std::vector<Snapshot<Scalar>>& snapshots() const { return snapshots_; }
  const Snapshot<Scalar>& snapshot(std::size_t i) const { return snapshots_.at(i); }
  std::size_t size() const { return snapshots_.size(); }
  const InputPattern<Scalar>& input() const { return input_; }
  const SignedDigraph& graph() const { return snapshots_.front().realization.graph(); }
  int node_count() const { return graph().node_count(); }

  Vector<Scalar> input_vector() const {
    Vector<Scalar> b = Vector<Scalar>::Zero(node_count());
    b(graph().leader() - 1) = input_.leader_gain();
    return b;
  }

  template <typename To>
  TemporalNetwork<To> cast() const {
    std::vector<Snapshot<To>> snaps;
    for (const auto& s : snapshots_)
      snaps.push_back({s.realization.template cast<To>(), scalar_cast<To>(s.duration)});
    return TemporalNetwork<To>(std::move(snaps), input_.template cast<To>());
  }

 private:
  std::vector<Snapshot<Scalar>> snapshots_;
  InputPattern<Scalar> input_;
};

}  // namespace herd
