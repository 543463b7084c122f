#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "herd/herdability.hpp"
#include "herd/linalg.hpp"
#include "herd/path_matching.hpp"
#include "herd/realization.hpp"

namespace herd {

/// Verdict of p identical snapshots next to the single-snapshot verdict.
template <typename Scalar>
struct SwitchingComparison {
  HerdabilityVerdict<Scalar> temporal;
  HerdabilityVerdict<Scalar> single;
  int temporal_rank = 0;
  int single_rank = 0;
  Matrix<Scalar> temporal_matrix;
};

/// Builds C_T from p copies of one realization (durations dt) and decides
/// it alongside the single-snapshot C. Requires p >= 2.
template <typename Scalar>
SwitchingComparison<Scalar> same_realization_switching(const Realization<Scalar>& r, const std::vector<Scalar>& durations,
                                                       const InputPattern<Scalar>& input = {}) {
  if (durations.size() < 2) throw InvalidArgumentError("same-realization switching needs p >= 2 snapshots");
  const auto tn = TemporalNetwork<Scalar>::repeated(r, durations, input);
  SwitchingComparison<Scalar> out;
  out.temporal_matrix = temporal_controllability_matrix(tn).entries;
  const Matrix<Scalar> c1 = controllability_matrix(r, input);
  if constexpr (kIsExact<Scalar>) {
    out.temporal = is_completely_herdable<Scalar>(out.temporal_matrix);
    out.single = is_completely_herdable<Scalar>(c1);
  } else {
    out.temporal = decide_with_fallback(out.temporal_matrix);
    out.single = decide_with_fallback(c1);
  }
  out.temporal_rank = rank_of<Scalar>(out.temporal_matrix);
  out.single_rank = rank_of<Scalar>(c1);
  return out;
}

/// A decided matrix, kept exactly (float results convert losslessly).
struct CertifiedMatrix {
  std::string label;
  MatrixQ matrix;
  Certificate certificate;
};

struct SnapshotStep {
  int p = 0;
  Backend backend = Backend::kExact;
  std::vector<MatrixQ> realizations;  // snapshot 1 first
  std::vector<Rational> durations;
  bool herdable = false;
  int rank = 0;
  /// Same realizations re-decided with every duration set to 1/10 and 10.
  bool herdable_short = false;
  bool herdable_long = false;
  std::size_t certificate = 0;  // index into AnalysisReport::certificates
};

struct AnalysisOptions {
  int p_max = 4;
  Rational d = kDefaultSeparation;
  /// Per-snapshot durations; the last entry repeats. Defaults to 1.
  std::vector<Rational> durations{Rational(1)};
  Rational leader_gain{1};
  /// Forces a backend; by default exact exactly when the pattern is acyclic.
  std::optional<Backend> backend;
};

struct AnalysisReport {
  std::string digest;
  int node_count = 0;
  std::set<NodeId> signed_dilations;
  std::set<int> layer_dilations;
  /// Unit-magnitude single snapshot.
  bool static_herdable = false;
  std::size_t static_certificate = 0;
  std::vector<SnapshotStep> steps;
  std::optional<int> minimal_p;
  int p_max = 0;
  /// Matching of the synthesized network at the minimal p (or p_max).
  PathMatchReport matching;
  std::vector<CertifiedMatrix> certificates;
};

/// Synthesizes p = 1, 2, ... snapshots and stops at the first herdable
/// C_T. Exact arithmetic when every snapshot matrix is nilpotent, float
/// otherwise. Never throws for a negative outcome: `minimal_p` stays empty.
AnalysisReport minimal_snapshot_count(std::shared_ptr<const SignedDigraph> g, const AnalysisOptions& options = {});

struct SamplerOptions {
  int samples = 200;
  std::uint64_t seed = 0;
  int snapshots = 1;
  double duration = 1.0;
  double low = 0.1;
  double high = 10.0;
  int jobs = 1;
};

struct SampleOutcome {
  bool herdable = false;
  bool certified = false;
  Backend backend = Backend::kFloat;
};

struct SamplerResult {
  int samples = 0;
  int herdable = 0;
  int certified = 0;
  int exact_fallbacks = 0;
  double fraction = 0;
  /// Lowest-index herdable draw, if any.
  std::optional<int> witness_index;
  std::vector<Matrix<double>> witness_realizations;
  std::optional<Certificate> witness_certificate;
  /// C_T of the witness draw, which its certificate refers to.
  std::optional<Matrix<double>> witness_matrix;
  std::vector<SampleOutcome> outcomes;
};

/// Draws magnitudes uniformly from [low, high] per edge and snapshot and
/// decides each draw in float, retrying undecided draws exactly. Draws are
/// taken sequentially from one SplitMix64 stream; decisions fan out over
/// `jobs` threads and merge by sample index.
SamplerResult ss_herdability_sampler(std::shared_ptr<const SignedDigraph> g, const SamplerOptions& options);

}  // namespace herd
