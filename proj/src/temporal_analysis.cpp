#include "herd/temporal_analysis.hpp"

#include <algorithm>
#include <thread>

#include "herd/instance_gen.hpp"
#include "herd/layered_graph.hpp"

namespace herd {

namespace {

std::vector<Rational> durations_for(const std::vector<Rational>& given, int p) {
  if (given.empty()) throw InvalidArgumentError("at least one duration is required");
  std::vector<Rational> out;
  for (int i = 0; i < p; ++i) out.push_back(given[std::min<std::size_t>(i, given.size() - 1)]);
  return out;
}

struct Decision {
  bool herdable = false;
  int rank = 0;
  MatrixQ matrix;
  Certificate certificate;
};

Decision decide(const std::vector<Realization<Rational>>& rs, const std::vector<Rational>& durations,
                const InputPattern<Rational>& input, Backend backend) {
  std::vector<Snapshot<Rational>> snaps;
  for (std::size_t i = 0; i < rs.size(); ++i) snaps.push_back({rs[i], durations[i]});
  const TemporalNetwork<Rational> tn(std::move(snaps), input);
  Decision out;
  if (backend == Backend::kExact) {
    out.matrix = temporal_controllability_matrix(tn).entries;
    const auto v = is_completely_herdable<Rational>(out.matrix);
    out.herdable = v.herdable;
    out.rank = exact_rank(out.matrix);
    out.certificate = to_certificate(v);
  } else {
    const Matrix<double> c = temporal_controllability_matrix(tn.cast<double>()).entries;
    out.matrix = matrix_cast<Rational>(c);
    out.certificate = certify_with_fallback(c);
    out.herdable = out.certificate.herdable;
    out.rank = numerical_rank(c);
  }
  return out;
}

}  // namespace

AnalysisReport minimal_snapshot_count(std::shared_ptr<const SignedDigraph> g, const AnalysisOptions& options) {
  if (options.p_max < 2) throw InvalidArgumentError("p-max must be at least 2");
  require_admissible(*g);
  const InputPattern<Rational> input(options.leader_gain);
  AnalysisReport report;
  report.digest = instance_digest(*g);
  report.node_count = g->node_count();
  report.p_max = options.p_max;
  report.signed_dilations = detect_signed_dilations(*g);
  report.layer_dilations = detect_layer_dilations(build_layered_graph(*g));

  const auto unit = Realization<Rational>::unit(g);
  const Backend backend =
      options.backend.value_or(is_nilpotent(unit.matrix()) ? Backend::kExact : Backend::kFloat);

  {
    const auto d = decide({unit}, {Rational(1)}, input, backend);
    report.static_herdable = d.herdable;
    report.static_certificate = report.certificates.size();
    report.certificates.push_back({"static", d.matrix, d.certificate});
  }

  for (int p = 1; p <= options.p_max; ++p) {
    auto synth = synthesize_snapshots(g, p, options.d);
    SnapshotStep step;
    step.p = p;
    step.backend = backend;
    step.durations = durations_for(options.durations, p);
    for (const auto& r : synth.realizations) step.realizations.push_back(r.matrix());
    const auto d = decide(synth.realizations, step.durations, input, backend);
    step.herdable = d.herdable;
    step.rank = d.rank;
    step.herdable_short = decide(synth.realizations, std::vector<Rational>(p, Rational(1, 10)), input, backend).herdable;
    step.herdable_long = decide(synth.realizations, std::vector<Rational>(p, Rational(10)), input, backend).herdable;
    step.certificate = report.certificates.size();
    report.certificates.push_back({"p=" + std::to_string(p), d.matrix, d.certificate});
    report.steps.push_back(std::move(step));
    report.matching = std::move(synth.report);
    if (d.herdable) {
      report.minimal_p = p;
      break;
    }
  }
  return report;
}

SamplerResult ss_herdability_sampler(std::shared_ptr<const SignedDigraph> g, const SamplerOptions& options) {
  if (options.samples < 1) throw InvalidArgumentError("samples must be at least 1");
  if (options.snapshots < 1) throw InvalidArgumentError("snapshot count must be at least 1");
  if (options.jobs < 1) throw InvalidArgumentError("jobs must be at least 1");
  if (!(options.low > 0) || !(options.high >= options.low))
    throw InvalidArgumentError("magnitude range must satisfy 0 < low <= high");
  require_admissible(*g);

  // Draw everything up front so the stream does not depend on scheduling.
  SplitMix64 rng(options.seed);
  std::vector<std::vector<Realization<double>>> draws(options.samples);
  for (auto& draw : draws) {
    for (int s = 0; s < options.snapshots; ++s) {
      std::vector<double> mags(g->edge_count());
      for (auto& m : mags) m = rng.uniform(options.low, options.high);
      draw.push_back(Realization<double>::from_magnitudes(g, mags));
    }
  }

  SamplerResult result;
  result.samples = options.samples;
  result.outcomes.resize(options.samples);
  std::vector<Certificate> certs(options.samples);
  std::vector<Matrix<double>> matrices(options.samples);

  auto work = [&](int first, int stride) {
    for (int i = first; i < options.samples; i += stride) {
      std::vector<Snapshot<double>> snaps;
      for (const auto& r : draws[i]) snaps.push_back({r, options.duration});
      const Matrix<double> c = temporal_controllability_matrix(TemporalNetwork<double>(snaps)).entries;
      certs[i] = certify_with_fallback(c);
      matrices[i] = c;
      result.outcomes[i] = {certs[i].herdable, verify_certificate(matrix_cast<Rational>(c), certs[i]),
                            certs[i].backend};
    }
  };
  const int jobs = std::min(options.jobs, options.samples);
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(work, j, jobs);
  }

  for (int i = 0; i < options.samples; ++i) {
    const auto& o = result.outcomes[i];
    result.herdable += o.herdable;
    result.certified += o.certified;
    result.exact_fallbacks += o.backend == Backend::kExact;
    if (o.herdable && !result.witness_index) {
      result.witness_index = i;
      for (const auto& r : draws[i]) result.witness_realizations.push_back(r.matrix());
      result.witness_certificate = certs[i];
      result.witness_matrix = matrices[i];
    }
  }
  result.fraction = static_cast<double>(result.herdable) / options.samples;
  return result;
}

}  // namespace herd
