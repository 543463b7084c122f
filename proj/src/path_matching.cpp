#include "herd/path_matching.hpp"

#include <sstream>

namespace herd {

std::set<std::size_t> RealizationPlan::matching_edge_set() const {
  std::set<std::size_t> out;
  for (const auto& m : matching) out.insert(m.edge);
  return out;
}

RealizationPlan make_plan(const SignedDigraph& g, std::vector<LayerTarget> targets, const Rational& d) {
  if (!(d > 0)) throw InvalidArgumentError("separation d must be positive");
  RealizationPlan plan;
  plan.d = d;
  plan.matching = select_matching_edges(build_layered_graph(g), targets);
  plan.targets = std::move(targets);
  const auto chosen = plan.matching_edge_set();
  plan.magnitudes.resize(g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i)
    plan.magnitudes[i] = chosen.contains(i) ? Rational(10 * d) : Rational(d / (2 + static_cast<long>(i)));
  return plan;
}

std::vector<LayerTarget> choose_targets(const LayeredGraph<double>& lg, const std::set<NodeId>* residual) {
  std::vector<LayerTarget> out;
  for (int k = 2; k <= lg.depth(); ++k) {
    std::set<NodeId> pos, neg;
    for (const auto& occ : lg.layer(k)) (occ.sign == Sign::kPositive ? pos : neg).insert(occ.node);
    if (pos.empty() && neg.empty()) continue;
    auto reach = [&](const std::set<NodeId>& s) {
      std::set<NodeId> r;
      if (residual != nullptr)
        for (NodeId v : s)
          if (residual->contains(v)) r.insert(v);
      return r;
    };
    const auto pos_r = reach(pos), neg_r = reach(neg);
    bool choose_pos;
    if (pos_r.size() != neg_r.size())
      choose_pos = pos_r.size() > neg_r.size();
    else
      choose_pos = pos.size() >= neg.size();
    LayerTarget t;
    t.layer = k;
    t.sign = choose_pos ? Sign::kPositive : Sign::kNegative;
    if (residual == nullptr)
      t.nodes = choose_pos ? pos : neg;
    else
      t.nodes = choose_pos ? pos_r : neg_r;
    out.push_back(std::move(t));
  }
  return out;
}

SynthesisResult synthesize_snapshots(std::shared_ptr<const SignedDigraph> g, int p, const Rational& d) {
  if (p < 1) throw InvalidArgumentError("snapshot count must be at least 1");
  require_admissible(*g);
  const auto lg = build_layered_graph(*g);
  SynthesisResult out;
  for (int k = 0; k < p; ++k) {
    const std::set<NodeId>* residual = k == 0 ? nullptr : &out.report.snapshots.back().residual;
    // Once every node is matched, later snapshots fall back to the first-snapshot rule.
    const bool exhausted = residual != nullptr && residual->empty();
    auto plan = make_plan(*g, choose_targets(lg, exhausted ? nullptr : residual), d);
    auto r = Realization<Rational>::from_magnitudes(g, plan.magnitudes);
    auto sm = path_sign_matched_sets(r, InputPattern<Rational>(), residual);
    sm.snapshot = k + 1;
    out.report.snapshots.push_back(std::move(sm));
    out.plans.push_back(std::move(plan));
    out.realizations.push_back(std::move(r));
  }
  out.residual = out.report.snapshots.back().residual;
  return out;
}

SynthesisResult synthesize_two_snapshots(std::shared_ptr<const SignedDigraph> g, const Rational& d) {
  auto out = synthesize_snapshots(std::move(g), 2, d);
  if (!out.residual.empty()) {
    std::ostringstream os;
    os << "nodes";
    for (NodeId v : out.residual) os << ' ' << v;
    os << " remain unmatched after two snapshots";
    throw SynthesisImpossibleError(os.str());
  }
  return out;
}

}  // namespace herd
