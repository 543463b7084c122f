#include "cli.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "herd/herdability.hpp"
#include "herd/instance_gen.hpp"
#include "herd/io_format.hpp"
#include "herd/layered_graph.hpp"
#include "herd/linalg.hpp"
#include "herd/path_matching.hpp"
#include "herd/simulator.hpp"
#include "herd/temporal_analysis.hpp"

namespace herd {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string backend = "auto";
  std::string d = "10";
  int p_max = 4;
  int p = 2;
  std::optional<std::uint64_t> seed;
  std::optional<double> step;
  std::string durations = "1";
  int samples = 0;
  int jobs = 1;
  int segments = kDefaultSegments;
  std::string expect;
  std::string plot_data;
  std::string x0;
  bool plan = false;
  std::size_t cap = kDefaultOccurrenceCap;
  int n = 0;
  std::string topology = "tree";
  std::string signs = "random";
};

std::vector<Rational> parse_durations(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Rational dt = parse_rational(item);
    if (!(dt > 0)) throw InvalidArgumentError("durations must be positive, got '" + item + "'");
    out.push_back(dt);
  }
  if (out.empty()) throw InvalidArgumentError("--durations needs at least one value");
  return out;
}

Vector<double> parse_state(const std::string& text, Eigen::Index n) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(parse_rational(item).convert_to<double>());
  if (static_cast<Eigen::Index>(values.size()) != n)
    throw InvalidArgumentError("--x0 needs " + std::to_string(n) + " comma-separated values");
  return Eigen::Map<Vector<double>>(values.data(), n);
}

std::optional<Backend> parse_backend(const std::string& text) {
  if (text == "auto") return std::nullopt;
  return backend_from_string(text);
}

void check_expect(const std::string& expect) {
  if (!expect.empty() && expect != "herdable" && expect != "not-herdable")
    throw InvalidArgumentError("--expect takes 'herdable' or 'not-herdable'");
}

int expect_status(const std::string& expect, bool herdable, std::ostream& err) {
  if (expect.empty()) return kExitOk;
  if ((expect == "herdable") == herdable) return kExitOk;
  err << "expectation failed: result is " << (herdable ? "herdable" : "not herdable") << "\n";
  return kExitUnexpected;
}

GraphDocument load(const std::string& path, std::ostream& err) {
  auto doc = read_graph_file(path);
  for (const auto& w : doc.warnings) err << "warning: " << w << "\n";
  return doc;
}

void emit(const Options& opt, const std::string& text, std::ostream& out) {
  if (opt.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.output, std::ios::binary);
  if (!file) throw InvalidArgumentError("cannot write '" + opt.output + "'");
  file << text;
}

bool all_nilpotent(const TemporalNetwork<Rational>& tn) {
  for (const auto& s : tn.snapshots())
    if (!is_nilpotent(s.realization.matrix())) return false;
  return true;
}

struct Decided {
  CertifiedMatrix certified;
  int rank = 0;
};

// Exact when requested or when every exponential is a finite series.
Decided decide_network(const TemporalNetwork<Rational>& tn, std::optional<Backend> forced, const std::string& label) {
  const Backend backend = forced.value_or(all_nilpotent(tn) ? Backend::kExact : Backend::kFloat);
  Decided out;
  out.certified.label = label;
  if (backend == Backend::kExact) {
    out.certified.matrix = temporal_controllability_matrix(tn).entries;
    out.certified.certificate = to_certificate(is_completely_herdable<Rational>(out.certified.matrix));
    out.rank = exact_rank(out.certified.matrix);
  } else {
    const Matrix<double> c = temporal_controllability_matrix(tn.cast<double>()).entries;
    out.certified.matrix = matrix_cast<Rational>(c);
    out.certified.certificate = certify_with_fallback(c);
    out.rank = numerical_rank(c);
  }
  return out;
}

// The document's own snapshots, or unit magnitudes over --durations.
TemporalNetwork<Rational> network_of(const GraphDocument& doc, const Options& opt) {
  if (auto tn = doc.temporal_network()) return *tn;
  return TemporalNetwork<Rational>::repeated(Realization<Rational>::unit(doc.graph), parse_durations(opt.durations),
                                             doc.input());
}

Json double_array(const Vector<double>& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

int cmd_validate(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto doc = load(opt.input, err);
  const auto report = validate(*doc.graph);
  ReportDocument rep;
  rep.kind = "validation";
  rep.result = to_json(report);
  rep.result["instance"] = instance_digest(*doc.graph);
  emit(opt, serialize_report(rep), out);
  if (!report.admissible()) {
    err << "structural error: " << report.violations.front().message << "\n";
    return kExitError;
  }
  return kExitOk;
}

int cmd_layered(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto doc = load(opt.input, err);
  require_admissible(*doc.graph);
  const auto base = doc.base_realization();
  const auto input = doc.input();
  const auto lg = build_layered_graph<Rational>(*doc.graph, doc.weights ? &base : nullptr, input, opt.cap);
  ReportDocument rep;
  rep.kind = "layered";
  rep.result = layered_json(lg);
  Json ld = Json::array();
  for (int k : detect_layer_dilations(lg)) ld.push_back(k);
  rep.result["layer_dilations"] = std::move(ld);
  emit(opt, serialize_report(rep), out);
  return kExitOk;
}

int cmd_dilations(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto doc = load(opt.input, err);
  require_admissible(*doc.graph);
  ReportDocument rep;
  rep.kind = "dilations";
  Json sd = Json::array();
  for (NodeId v : detect_signed_dilations(*doc.graph)) sd.push_back(v);
  Json ld = Json::array();
  for (int k : detect_layer_dilations(build_layered_graph(*doc.graph, opt.cap))) ld.push_back(k);
  rep.result["signed_dilations"] = std::move(sd);
  rep.result["layer_dilations"] = std::move(ld);
  emit(opt, serialize_report(rep), out);
  return kExitOk;
}

int cmd_analyze(const Options& opt, std::ostream& out, std::ostream& err) {
  check_expect(opt.expect);
  if (opt.samples < 0) throw InvalidArgumentError("--samples must be non-negative");
  if (opt.samples > 0 && !opt.seed) throw InvalidArgumentError("--samples draws random realizations and needs --seed");
  const auto forced = parse_backend(opt.backend);
  const auto doc = load(opt.input, err);
  AnalysisOptions ao;
  ao.p_max = opt.p_max;
  ao.d = parse_rational(opt.d);
  ao.durations = parse_durations(opt.durations);
  ao.leader_gain = doc.leader_gain;
  ao.backend = forced;
  const auto report = minimal_snapshot_count(doc.graph, ao);

  ReportDocument rep;
  rep.kind = "analysis";
  rep.result = to_json(report);
  rep.certificates = report.certificates;
  bool herdable = report.minimal_p.has_value();

  if (const auto tn = doc.temporal_network()) {
    const auto given = decide_network(*tn, forced, "given");
    Json g = Json::object();
    g["snapshots"] = tn->size();
    g["backend"] = std::string(to_string(given.certified.certificate.backend));
    g["herdable"] = given.certified.certificate.herdable;
    g["rank"] = given.rank;
    g["certificate"] = rep.certificates.size();
    rep.result["given"] = std::move(g);
    herdable = given.certified.certificate.herdable;
    rep.certificates.push_back(given.certified);
  }

  if (opt.samples > 0) {
    SamplerOptions so;
    so.samples = opt.samples;
    so.seed = *opt.seed;
    so.jobs = opt.jobs;
    const auto sampled = ss_herdability_sampler(doc.graph, so);
    Json s = to_json(sampled);
    s["seed"] = *opt.seed;
    if (sampled.witness_certificate) {
      s["certificate"] = rep.certificates.size();
      rep.certificates.push_back(
          {"sampler-witness", matrix_cast<Rational>(*sampled.witness_matrix), *sampled.witness_certificate});
    }
    rep.result["sampler"] = std::move(s);
  }
  emit(opt, serialize_report(rep), out);
  return expect_status(opt.expect, herdable, err);
}

int cmd_match(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto doc = load(opt.input, err);
  require_admissible(*doc.graph);
  const auto tn = network_of(doc, opt);
  ReportDocument rep;
  rep.kind = "match";
  rep.result = to_json(match_snapshots(tn));
  emit(opt, serialize_report(rep), out);
  return kExitOk;
}

int cmd_synthesize(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto doc = load(opt.input, err);
  const auto result = synthesize_snapshots(doc.graph, opt.p, parse_rational(opt.d));
  if (opt.plan) {
    ReportDocument rep;
    rep.kind = "synthesis";
    rep.result = to_json(result, *doc.graph);
    emit(opt, serialize_report(rep), out);
    return kExitOk;
  }
  GraphDocument synthesized = make_document(doc.graph);
  synthesized.leader_gain = doc.leader_gain;
  synthesized.exact = doc.exact;
  std::vector<Rational> durations = parse_durations(opt.durations);
  for (std::size_t k = 0; k < result.realizations.size(); ++k) {
    GraphDocument::SnapshotEntry entry;
    entry.duration = durations[std::min(k, durations.size() - 1)];
    const auto& a = result.realizations[k].matrix();
    for (const auto& e : doc.graph->edges()) entry.weights.push_back(a(e.to - 1, e.from - 1));
    synthesized.snapshots.push_back(std::move(entry));
  }
  emit(opt, serialize_graph(synthesized), out);
  if (!result.residual.empty()) {
    err << "warning: nodes";
    for (NodeId v : result.residual) err << ' ' << v;
    err << " remain unmatched after " << opt.p << " snapshots\n";
  }
  return kExitOk;
}

int cmd_simulate(const Options& opt, std::ostream& out, std::ostream& err) {
  check_expect(opt.expect);
  const auto forced = parse_backend(opt.backend);
  const auto doc = load(opt.input, err);
  require_admissible(*doc.graph);
  const auto tn = network_of(doc, opt);
  const auto decided = decide_network(tn, forced, "simulated");
  const auto& cert = decided.certified.certificate;

  ReportDocument rep;
  rep.kind = "simulation";
  rep.result["herdable"] = cert.herdable;
  rep.result["backend"] = std::string(to_string(cert.backend));
  rep.result["threshold"] = 1;
  rep.certificates.push_back(decided.certified);
  bool herded = false;
  if (cert.herdable) {
    const auto tnd = tn.cast<double>();
    double min_dt = tnd.snapshot(0).duration;
    for (const auto& s : tnd.snapshots()) min_dt = std::min(min_dt, s.duration);
    const double step = opt.step.value_or(min_dt / 100);
    DesignOptions design;
    design.segments_per_snapshot = opt.segments;
    const Vector<double> image = vector_cast<double>(*cert.achieved_image);
    Vector<double> x0 = Vector<double>::Zero(tnd.node_count());
    PiecewiseInput input;
    Vector<double> target;
    if (!opt.x0.empty()) {
      x0 = parse_state(opt.x0, tnd.node_count());
      auto plan = herd_from(tnd, x0, image, 1.0, design);
      input = std::move(plan.input);
      target = plan.predicted;
    } else {
      input = design_input(tnd, image, design);
      target = image;
    }
    const auto traj = simulate(tnd, input.signal(), x0, step);
    const Vector<double>& xf = traj.final_state();
    herded = xf.minCoeff() >= 1.0 - 1e-6;
    rep.result["step"] = step;
    rep.result["segments_per_snapshot"] = input.segments_per_snapshot;
    rep.result["map_rank"] = input.map_rank;
    rep.result["map_condition"] = input.map_condition;
    rep.result["design_residual"] = input.residual;
    rep.result["initial_state"] = double_array(x0);
    rep.result["target"] = double_array(target);
    rep.result["final_state"] = double_array(xf);
    rep.result["min_final"] = xf.minCoeff();
    rep.result["herded"] = herded;
    Json in = Json::object();
    in["times"] = input.times;
    in["values"] = input.values;
    rep.result["input"] = std::move(in);
    if (!opt.plot_data.empty()) {
      std::ofstream csv(opt.plot_data, std::ios::binary);
      if (!csv) throw InvalidArgumentError("cannot write '" + opt.plot_data + "'");
      write_trajectory_csv(csv, traj);
    }
  }
  emit(opt, serialize_report(rep), out);
  return expect_status(opt.expect, herded, err);
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto report = parse_report(read_text_file(opt.input));
  for (const auto& w : report.warnings) err << "warning: " << w << "\n";
  if (report.certificates.empty()) throw ConsistencyError("report carries no certificates");
  bool all = true;
  for (const auto& c : report.certificates) {
    const bool ok = verify_certificate(c.matrix, c.certificate);
    out << (ok ? "valid" : "INVALID") << ": " << c.label << " (" << to_string(c.certificate.backend) << ", "
        << (c.certificate.herdable ? "herdable" : "not herdable") << ")\n";
    all = all && ok;
  }
  if (!all) {
    err << "consistency error: certificate invalid\n";
    return kExitError;
  }
  out << "certificate valid\n";
  return kExitOk;
}

int cmd_generate(const Options& opt, std::ostream& out, std::ostream&) {
  if (!opt.seed) throw InvalidArgumentError("generate needs --seed");
  GenSpec spec;
  spec.n = opt.n;
  spec.topology = topology_from_string(opt.topology);
  spec.signs = sign_policy_from_string(opt.signs);
  spec.seed = *opt.seed;
  const auto g = std::make_shared<const SignedDigraph>(generate(spec));
  emit(opt, serialize_graph(make_document(g)), out);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Structural sign herdability of temporally switching signed networks", "herd"};
  app.require_subcommand(1);

  auto input = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", opt.input, what)->required();
    sub->add_option("-o,--output", opt.output, "Write the document here instead of standard output");
  };
  auto* validate_cmd = app.add_subcommand("validate", "Check leader autonomy, input connectivity and self-loops");
  input(validate_cmd, ".herdnet file");
  auto* layered_cmd = app.add_subcommand("layered", "Unroll the signed layered graph");
  input(layered_cmd, ".herdnet file");
  layered_cmd->add_option("--cap", opt.cap, "Maximum occurrences per layer");
  auto* dilations_cmd = app.add_subcommand("dilations", "Report signed and layer dilations");
  input(dilations_cmd, ".herdnet file");
  dilations_cmd->add_option("--cap", opt.cap, "Maximum occurrences per layer");

  auto* analyze_cmd = app.add_subcommand("analyze", "Minimal snapshot count with certificates");
  input(analyze_cmd, ".herdnet file");
  analyze_cmd->add_option("--p-max", opt.p_max, "Largest snapshot count tried")->capture_default_str();
  analyze_cmd->add_option("--d", opt.d, "Separation constant of the synthesized realizations")->capture_default_str();
  analyze_cmd->add_option("--durations", opt.durations, "Comma-separated snapshot durations; the last repeats")
      ->capture_default_str();
  analyze_cmd->add_option("--backend", opt.backend, "auto, exact or float")->capture_default_str();
  analyze_cmd->add_option("--samples", opt.samples, "Random realizations to sample (needs --seed)");
  analyze_cmd->add_option("--seed", opt.seed, "Seed for the sampler");
  analyze_cmd->add_option("--jobs", opt.jobs, "Worker threads for the sampler")->capture_default_str();
  analyze_cmd->add_option("--expect", opt.expect, "Exit 2 unless the result is 'herdable' or 'not-herdable'");

  auto* match_cmd = app.add_subcommand("match", "Path-sign matched sets per snapshot");
  input(match_cmd, ".herdnet file");
  match_cmd->add_option("--durations", opt.durations, "Durations used when the file has no snapshots");

  auto* synth_cmd = app.add_subcommand("synthesize", "Build snapshot realizations from matching edges");
  input(synth_cmd, ".herdnet file");
  synth_cmd->add_option("--p", opt.p, "Number of snapshots")->capture_default_str();
  synth_cmd->add_option("--d", opt.d, "Separation constant")->capture_default_str();
  synth_cmd->add_option("--durations", opt.durations, "Comma-separated snapshot durations")->capture_default_str();
  synth_cmd->add_flag("--plan", opt.plan, "Emit the synthesis plan report instead of a .herdnet document");

  auto* sim_cmd = app.add_subcommand("simulate", "Design an input from the certificate and integrate");
  input(sim_cmd, ".herdnet file");
  sim_cmd->add_option("--step", opt.step, "Integration step (default min duration / 100)");
  sim_cmd->add_option("--segments", opt.segments, "Input segments per snapshot")->capture_default_str();
  sim_cmd->add_option("--durations", opt.durations, "Durations used when the file has no snapshots");
  sim_cmd->add_option("--backend", opt.backend, "auto, exact or float")->capture_default_str();
  sim_cmd->add_option("--x0", opt.x0, "Comma-separated initial state (default zero)");
  sim_cmd->add_option("--emit-plot-data", opt.plot_data, "Write the trajectory as CSV (t, x1..xn, u)");
  sim_cmd->add_option("--expect", opt.expect, "Exit 2 unless the result is 'herdable' or 'not-herdable'");

  auto* verify_cmd = app.add_subcommand("verify", "Re-check every certificate of a .report file");
  verify_cmd->add_option("input", opt.input, ".report file")->required();

  auto* gen_cmd = app.add_subcommand("generate", "Random admissible signed digraph");
  gen_cmd->add_option("--n", opt.n, "Node count")->required();
  gen_cmd->add_option("--topology", opt.topology, "tree, layered-dag or general")->capture_default_str();
  gen_cmd->add_option("--signs", opt.signs, "all-positive, random, force-signed-dilation or force-layer-dilation")
      ->capture_default_str();
  gen_cmd->add_option("--seed", opt.seed, "Generator seed")->required();
  gen_cmd->add_option("-o,--output", opt.output, "Write the document here instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (opt.jobs < 1) throw InvalidArgumentError("--jobs must be at least 1");
    if (*validate_cmd) return cmd_validate(opt, out, err);
    if (*layered_cmd) return cmd_layered(opt, out, err);
    if (*dilations_cmd) return cmd_dilations(opt, out, err);
    if (*analyze_cmd) return cmd_analyze(opt, out, err);
    if (*match_cmd) return cmd_match(opt, out, err);
    if (*synth_cmd) return cmd_synthesize(opt, out, err);
    if (*sim_cmd) return cmd_simulate(opt, out, err);
    if (*verify_cmd) return cmd_verify(opt, out, err);
    if (*gen_cmd) return cmd_generate(opt, out, err);
  } catch (const Error& e) {
    err << e.category() << ": " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace herd
