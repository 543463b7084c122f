#include "herd/io_format.hpp"

#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace herd {

namespace {

using Integer = boost::multiprecision::mpz_int;

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t index) { return path + "[" + std::to_string(index) + "]"; }

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ParseError(path + ": " + what); }

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(at(path, key), "missing required field");
  return *it;
}

void warn_unknown(const Json& obj, const std::set<std::string>& known, const std::string& path,
                  std::vector<std::string>& warnings) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.contains(it.key())) warnings.push_back("ignoring unknown field " + at(path, it.key()));
}

void require_object(const Json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
}

void require_array(const Json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
}

long long integer_field(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
    fail(path, "integer out of range");
  const long long x = v.get<long long>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) fail(path, "integer out of range");
  return x;
}

Integer integer_component(const Json& v, const std::string& path) {
  if (v.is_number_unsigned()) return Integer(v.get<std::uint64_t>());
  if (v.is_number_integer()) return Integer(v.get<std::int64_t>());
  if (v.is_string()) {
    const std::string text = v.get<std::string>();
    try {
      const Rational r = parse_rational(text);
      if (is_integer(r) && text.find_first_of("./eE") == std::string::npos) return boost::multiprecision::numerator(r);
    } catch (const ParseError&) {
    }
    fail(path, "expected an integer string, got '" + text + "'");
  }
  fail(path, "expected an integer or integer string");
}

// Exact unless the JSON literal is floating point.
Rational number(const Json& v, const std::string& path, bool& exact) {
  if (v.is_number_integer()) return Rational(integer_component(v, path));
  if (v.is_number_float()) {
    const double d = v.get<double>();
    exact = false;
    return to_rational(d);
  }
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
      fail(path, e.what());
    }
  }
  if (v.is_array()) {
    if (v.size() != 2) fail(path, "a rational pair needs exactly two integers");
    const Integer num = integer_component(v[0], at(path, 0));
    const Integer den = integer_component(v[1], at(path, 1));
    if (den == 0) fail(path, "zero denominator");
    return Rational(num, den);
  }
  fail(path, "expected a number, a \"p/q\" string, or a [p, q] pair");
}

Sign sign_field(const Json& v, const std::string& path) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "+") return Sign::kPositive;
    if (s == "-") return Sign::kNegative;
  }
  fail(path, "expected \"+\" or \"-\"");
}

void check_weight_sign(const Rational& w, Sign expected, const SignedEdge& e, const std::string& path) {
  const std::string edge = std::to_string(e.from) + "->" + std::to_string(e.to);
  if (w == 0) throw ConsistencyError(path + ": edge " + edge + " has zero weight");
  if ((w > 0) != (expected == Sign::kPositive))
    throw ConsistencyError(path + ": weight of " + edge + " flips the sign pattern (expected " + to_char(expected) +
                           ")");
}

Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return Json(x.convert_to<std::int64_t>());
  return Json(x.str());
}

// Graph-document value: plain integers stay plain, other exact values become pairs.
Json value_json(const Rational& r, bool exact) {
  if (!exact) return Json(r.convert_to<double>());
  if (is_integer(r)) return integer_json(boost::multiprecision::numerator(r));
  return rational_json(r);
}

Json set_json(const std::set<NodeId>& s) {
  Json out = Json::array();
  for (NodeId v : s) out.push_back(v);
  return out;
}

Json sign_json(std::optional<Sign> s) {
  if (!s) return nullptr;
  return std::string(1, to_char(*s));
}

// Nonzero entries of A as {from, to, weight}, sorted by (from, to).
template <typename Scalar, typename Fn>
Json weights_json(const Matrix<Scalar>& a, Fn&& value) {
  Json out = Json::array();
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != 0) {
        Json e = Json::object();
        e["from"] = j + 1;
        e["to"] = i + 1;
        e["weight"] = value(a(i, j));
        out.push_back(std::move(e));
      }
  return out;
}

std::optional<VectorQ> optional_vector(const Json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  require_array(*it, at(path, key));
  VectorQ v(it->size());
  for (std::size_t i = 0; i < it->size(); ++i) v(i) = rational_from_json((*it)[i], at(at(path, key), i));
  return v;
}

Json optional_vector_json(const std::optional<VectorQ>& v) {
  if (!v) return nullptr;
  return vector_json(*v);
}

}  // namespace

Realization<Rational> GraphDocument::base_realization() const {
  if (!weights) return Realization<Rational>::unit(graph);
  std::vector<Rational> mags;
  for (const auto& w : *weights) mags.push_back(abs_of(w));
  return Realization<Rational>::from_magnitudes(graph, mags);
}

std::optional<TemporalNetwork<Rational>> GraphDocument::temporal_network() const {
  if (snapshots.empty()) {
    if (!weights) return std::nullopt;
    return TemporalNetwork<Rational>({{base_realization(), Rational(1)}}, input());
  }
  std::vector<Snapshot<Rational>> snaps;
  for (const auto& s : snapshots) {
    std::vector<Rational> mags;
    for (const auto& w : s.weights) mags.push_back(abs_of(w));
    snaps.push_back({Realization<Rational>::from_magnitudes(graph, mags), s.duration});
  }
  return TemporalNetwork<Rational>(std::move(snaps), input());
}

GraphDocument make_document(std::shared_ptr<const SignedDigraph> g) {
  GraphDocument doc;
  doc.graph = std::move(g);
  return doc;
}

GraphDocument parse_graph(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  require_object(root, "document");
  GraphDocument doc;
  warn_unknown(root, {"format", "version", "nodes", "leader", "leader_gain", "allow_self_loops", "edges", "snapshots"},
               "", doc.warnings);

  const Json& format = require(root, "format", "");
  if (!format.is_string() || format.get<std::string>() != "herdnet") fail("format", "expected \"herdnet\"");
  const long long version = integer_field(require(root, "version", ""), "version");
  if (version != kFormatVersion) fail("version", "unsupported version " + std::to_string(version));

  const int n = static_cast<int>(integer_field(require(root, "nodes", ""), "nodes"));
  const NodeId leader = root.contains("leader") ? static_cast<NodeId>(integer_field(root["leader"], "leader")) : 1;
  GraphOptions options;
  if (root.contains("allow_self_loops")) {
    if (!root["allow_self_loops"].is_boolean()) fail("allow_self_loops", "expected a boolean");
    options.allow_self_loops = root["allow_self_loops"].get<bool>();
  }
  if (root.contains("leader_gain")) {
    doc.leader_gain = number(root["leader_gain"], "leader_gain", doc.exact);
    if (!(doc.leader_gain > 0)) fail("leader_gain", "must be positive");
  }

  const Json& edges = require(root, "edges", "");
  require_array(edges, "edges");
  std::vector<SignedEdge> list;
  std::vector<std::optional<Rational>> given;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string path = at("edges", i);
    const Json& e = edges[i];
    require_object(e, path);
    warn_unknown(e, {"from", "to", "sign", "weight"}, path, doc.warnings);
    const auto from = static_cast<NodeId>(integer_field(require(e, "from", path), at(path, "from")));
    const auto to = static_cast<NodeId>(integer_field(require(e, "to", path), at(path, "to")));
    const Sign s = sign_field(require(e, "sign", path), at(path, "sign"));
    list.push_back({from, to, s});
    if (e.contains("weight")) {
      const Rational w = number(e["weight"], at(path, "weight"), doc.exact);
      check_weight_sign(w, s, list.back(), at(path, "weight"));
      given.push_back(w);
    } else {
      given.push_back(std::nullopt);
    }
  }

  auto graph = std::make_shared<const SignedDigraph>(n, list, leader, options);
  doc.graph = graph;

  const auto weighted = std::count_if(given.begin(), given.end(), [](const auto& w) { return w.has_value(); });
  if (weighted != 0 && weighted != static_cast<long>(given.size()))
    throw ConsistencyError("edges: weights must be given for all edges or for none");
  if (weighted != 0) {
    std::vector<Rational> ws(graph->edge_count());
    for (std::size_t i = 0; i < list.size(); ++i) ws[*graph->edge_index(list[i].from, list[i].to)] = *given[i];
    doc.weights = std::move(ws);
  }

  if (root.contains("snapshots")) {
    const Json& snaps = root["snapshots"];
    require_array(snaps, "snapshots");
    for (std::size_t k = 0; k < snaps.size(); ++k) {
      const std::string path = at("snapshots", k);
      const Json& s = snaps[k];
      require_object(s, path);
      warn_unknown(s, {"duration", "weights"}, path, doc.warnings);
      GraphDocument::SnapshotEntry entry;
      if (s.contains("duration")) {
        entry.duration = number(s["duration"], at(path, "duration"), doc.exact);
        if (!(entry.duration > 0)) fail(at(path, "duration"), "must be positive");
      }
      const std::string wpath = at(path, "weights");
      const Json& ws = require(s, "weights", path);
      require_array(ws, wpath);
      std::vector<std::optional<Rational>> slot(graph->edge_count());
      for (std::size_t i = 0; i < ws.size(); ++i) {
        const std::string epath = at(wpath, i);
        const Json& w = ws[i];
        require_object(w, epath);
        warn_unknown(w, {"from", "to", "weight"}, epath, doc.warnings);
        const auto from = static_cast<NodeId>(integer_field(require(w, "from", epath), at(epath, "from")));
        const auto to = static_cast<NodeId>(integer_field(require(w, "to", epath), at(epath, "to")));
        const auto idx = graph->edge_index(from, to);
        if (!idx)
          throw ConsistencyError(epath + ": " + std::to_string(from) + "->" + std::to_string(to) +
                                 " is not in the edge list");
        if (slot[*idx]) throw ConsistencyError(epath + ": duplicate weight for " + std::to_string(from) + "->" +
                                               std::to_string(to));
        const Rational value = number(require(w, "weight", epath), at(epath, "weight"), doc.exact);
        check_weight_sign(value, graph->edge(*idx).sign, graph->edge(*idx), at(epath, "weight"));
        slot[*idx] = value;
      }
      for (std::size_t i = 0; i < slot.size(); ++i) {
        if (!slot[i])
          throw ConsistencyError(wpath + ": missing weight for edge " + std::to_string(graph->edge(i).from) + "->" +
                                 std::to_string(graph->edge(i).to));
        entry.weights.push_back(*slot[i]);
      }
      doc.snapshots.push_back(std::move(entry));
    }
  }
  return doc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GraphDocument read_graph_file(const std::string& path) { return parse_graph(read_text_file(path)); }

std::string serialize_graph(const GraphDocument& doc) {
  const SignedDigraph& g = *doc.graph;
  Json root = Json::object();
  root["format"] = "herdnet";
  root["version"] = kFormatVersion;
  root["nodes"] = g.node_count();
  root["leader"] = g.leader();
  root["leader_gain"] = value_json(doc.leader_gain, doc.exact);
  root["allow_self_loops"] = g.options().allow_self_loops;
  Json edges = Json::array();
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edge(i);
    Json obj = Json::object();
    obj["from"] = e.from;
    obj["to"] = e.to;
    obj["sign"] = std::string(1, to_char(e.sign));
    if (doc.weights) obj["weight"] = value_json((*doc.weights)[i], doc.exact);
    edges.push_back(std::move(obj));
  }
  root["edges"] = std::move(edges);
  if (!doc.snapshots.empty()) {
    Json snaps = Json::array();
    for (const auto& s : doc.snapshots) {
      Json obj = Json::object();
      obj["duration"] = value_json(s.duration, doc.exact);
      Json ws = Json::array();
      for (std::size_t i = 0; i < g.edge_count(); ++i) {
        Json w = Json::object();
        w["from"] = g.edge(i).from;
        w["to"] = g.edge(i).to;
        w["weight"] = value_json(s.weights.at(i), doc.exact);
        ws.push_back(std::move(w));
      }
      obj["weights"] = std::move(ws);
      snaps.push_back(std::move(obj));
    }
    root["snapshots"] = std::move(snaps);
  }
  return root.dump(2) + "\n";
}

Json rational_json(const Rational& value) {
  Json out = Json::array();
  out.push_back(integer_json(boost::multiprecision::numerator(value)));
  out.push_back(integer_json(boost::multiprecision::denominator(value)));
  return out;
}

Rational rational_from_json(const Json& value, const std::string& path) {
  bool exact = true;
  const Rational r = number(value, path, exact);
  if (!exact) fail(path, "reports store exact values; floating-point literals are not accepted");
  return r;
}

Json vector_json(const VectorQ& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(rational_json(v(i)));
  return out;
}

Json matrix_json(const MatrixQ& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector_json(VectorQ(m.row(i).transpose())));
  return out;
}

Json to_json(const ValidationReport& report) {
  Json out = Json::object();
  out["admissible"] = report.admissible();
  Json vs = Json::array();
  for (const auto& v : report.violations) {
    Json obj = Json::object();
    switch (v.kind) {
      case Violation::Kind::kLeaderHasInEdge:
        obj["kind"] = "leader-has-in-edge";
        break;
      case Violation::Kind::kUnreachable:
        obj["kind"] = "unreachable";
        break;
      case Violation::Kind::kSelfLoop:
        obj["kind"] = "self-loop";
        break;
    }
    obj["node"] = v.node;
    obj["message"] = v.message;
    vs.push_back(std::move(obj));
  }
  out["violations"] = std::move(vs);
  return out;
}

Json to_json(const PathMatchReport& report) {
  Json snaps = Json::array();
  for (const auto& s : report.snapshots) {
    Json obj = Json::object();
    obj["snapshot"] = s.snapshot;
    obj["matched"] = set_json(s.matched);
    obj["degenerate"] = set_json(s.degenerate);
    obj["residual"] = set_json(s.residual);
    Json layers = Json::array();
    for (const auto& l : s.layers) {
      Json lj = Json::object();
      lj["layer"] = l.layer;
      lj["sign"] = sign_json(l.sign);
      lj["positive"] = set_json(l.positive);
      lj["negative"] = set_json(l.negative);
      lj["degenerate"] = set_json(l.degenerate);
      lj["matched"] = set_json(l.matched);
      layers.push_back(std::move(lj));
    }
    obj["layers"] = std::move(layers);
    snaps.push_back(std::move(obj));
  }
  Json out = Json::object();
  out["snapshots"] = std::move(snaps);
  return out;
}

Json to_json(const AnalysisReport& report) {
  Json out = Json::object();
  out["instance"] = report.digest;
  out["nodes"] = report.node_count;
  out["signed_dilations"] = set_json(report.signed_dilations);
  Json ld = Json::array();
  for (int k : report.layer_dilations) ld.push_back(k);
  out["layer_dilations"] = std::move(ld);
  Json stat = Json::object();
  stat["herdable"] = report.static_herdable;
  stat["certificate"] = report.static_certificate;
  out["static"] = std::move(stat);
  Json steps = Json::array();
  for (const auto& s : report.steps) {
    Json obj = Json::object();
    obj["p"] = s.p;
    obj["backend"] = std::string(to_string(s.backend));
    Json durations = Json::array();
    for (const auto& d : s.durations) durations.push_back(rational_json(d));
    obj["durations"] = std::move(durations);
    Json reals = Json::array();
    for (const auto& a : s.realizations) reals.push_back(weights_json(a, [](const Rational& w) { return rational_json(w); }));
    obj["realizations"] = std::move(reals);
    obj["herdable"] = s.herdable;
    obj["rank"] = s.rank;
    Json spots = Json::array();
    for (const auto& [dt, h] : {std::pair{Rational(1, 10), s.herdable_short}, std::pair{Rational(10), s.herdable_long}}) {
      Json sp = Json::object();
      sp["duration"] = rational_json(dt);
      sp["herdable"] = h;
      spots.push_back(std::move(sp));
    }
    obj["spot_checks"] = std::move(spots);
    obj["certificate"] = s.certificate;
    steps.push_back(std::move(obj));
  }
  out["steps"] = std::move(steps);
  out["p_max"] = report.p_max;
  if (report.minimal_p) {
    out["minimal_p"] = *report.minimal_p;
    out["outcome"] = "herdable";
  } else {
    out["minimal_p"] = nullptr;
    out["outcome"] = "not herdable within p_max (bounded search, not an impossibility claim)";
  }
  out["matching"] = to_json(report.matching);
  return out;
}

Json to_json(const SamplerResult& result) {
  Json out = Json::object();
  out["samples"] = result.samples;
  out["herdable"] = result.herdable;
  out["fraction"] = result.fraction;
  out["certified"] = result.certified;
  out["exact_fallbacks"] = result.exact_fallbacks;
  if (result.witness_index) {
    Json w = Json::object();
    w["index"] = *result.witness_index;
    Json reals = Json::array();
    for (const auto& a : result.witness_realizations)
      reals.push_back(weights_json(a, [](double x) { return Json(x); }));
    w["realizations"] = std::move(reals);
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json to_json(const SynthesisResult& result, const SignedDigraph& g) {
  Json snaps = Json::array();
  for (std::size_t k = 0; k < result.plans.size(); ++k) {
    const auto& plan = result.plans[k];
    Json obj = Json::object();
    obj["snapshot"] = k + 1;
    obj["d"] = rational_json(plan.d);
    Json targets = Json::array();
    for (const auto& t : plan.targets) {
      Json tj = Json::object();
      tj["layer"] = t.layer;
      tj["sign"] = sign_json(t.sign);
      tj["nodes"] = set_json(t.nodes);
      targets.push_back(std::move(tj));
    }
    obj["targets"] = std::move(targets);
    Json matching = Json::array();
    for (const auto& m : plan.matching) {
      Json mj = Json::object();
      mj["node"] = m.node;
      mj["layer"] = m.layer;
      mj["from"] = g.edge(m.edge).from;
      mj["to"] = g.edge(m.edge).to;
      matching.push_back(std::move(mj));
    }
    obj["matching_edges"] = std::move(matching);
    obj["weights"] = weights_json(result.realizations[k].matrix(), [](const Rational& w) { return rational_json(w); });
    snaps.push_back(std::move(obj));
  }
  Json out = Json::object();
  out["snapshots"] = std::move(snaps);
  out["residual"] = set_json(result.residual);
  out["matching"] = to_json(result.report);
  return out;
}

Json layered_json(const LayeredGraph<Rational>& lg) {
  Json layers = Json::array();
  for (int k = 1; k <= lg.depth(); ++k) {
    Json layer = Json::array();
    for (const auto& occ : lg.layer(k)) {
      Json o = Json::object();
      o["node"] = occ.node;
      o["sign"] = std::string(1, to_char(occ.sign));
      o["weight"] = lg.weighted() ? rational_json(occ.weight) : Json(nullptr);
      o["parent"] = k == 1 ? Json(nullptr) : Json(occ.parent);
      layer.push_back(std::move(o));
    }
    layers.push_back(std::move(layer));
  }
  Json out = Json::object();
  out["depth"] = lg.depth();
  out["layers"] = std::move(layers);
  return out;
}

Json certificate_json(const CertifiedMatrix& c) {
  Json out = Json::object();
  out["label"] = c.label;
  out["backend"] = std::string(to_string(c.certificate.backend));
  out["herdable"] = c.certificate.herdable;
  out["matrix"] = matrix_json(c.matrix);
  out["primal_witness"] = optional_vector_json(c.certificate.primal_witness);
  out["achieved_image"] = optional_vector_json(c.certificate.achieved_image);
  out["dual_witness"] = optional_vector_json(c.certificate.dual_witness);
  return out;
}

std::string serialize_report(const ReportDocument& report) {
  Json root = Json::object();
  root["format"] = "herd-report";
  root["version"] = kFormatVersion;
  root["kind"] = report.kind;
  root["result"] = report.result;
  Json certs = Json::array();
  for (const auto& c : report.certificates) certs.push_back(certificate_json(c));
  root["certificates"] = std::move(certs);
  return root.dump(2) + "\n";
}

ReportDocument parse_report(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  require_object(root, "document");
  ReportDocument doc;
  warn_unknown(root, {"format", "version", "kind", "result", "certificates"}, "", doc.warnings);
  const Json& format = require(root, "format", "");
  if (!format.is_string() || format.get<std::string>() != "herd-report") fail("format", "expected \"herd-report\"");
  const long long version = integer_field(require(root, "version", ""), "version");
  if (version != kFormatVersion) fail("version", "unsupported version " + std::to_string(version));
  const Json& kind = require(root, "kind", "");
  if (!kind.is_string()) fail("kind", "expected a string");
  doc.kind = kind.get<std::string>();
  if (root.contains("result")) doc.result = root["result"];

  if (root.contains("certificates")) {
    const Json& certs = root["certificates"];
    require_array(certs, "certificates");
    for (std::size_t i = 0; i < certs.size(); ++i) {
      const std::string path = at("certificates", i);
      const Json& c = certs[i];
      require_object(c, path);
      warn_unknown(c, {"label", "backend", "herdable", "matrix", "primal_witness", "achieved_image", "dual_witness"},
                   path, doc.warnings);
      CertifiedMatrix cm;
      const Json& label = require(c, "label", path);
      if (!label.is_string()) fail(at(path, "label"), "expected a string");
      cm.label = label.get<std::string>();
      const Json& backend = require(c, "backend", path);
      if (!backend.is_string()) fail(at(path, "backend"), "expected \"exact\" or \"float\"");
      try {
        cm.certificate.backend = backend_from_string(backend.get<std::string>());
      } catch (const Error&) {
        fail(at(path, "backend"), "expected \"exact\" or \"float\"");
      }
      const Json& herdable = require(c, "herdable", path);
      if (!herdable.is_boolean()) fail(at(path, "herdable"), "expected a boolean");
      cm.certificate.herdable = herdable.get<bool>();
      const std::string mpath = at(path, "matrix");
      const Json& m = require(c, "matrix", path);
      require_array(m, mpath);
      if (m.empty()) fail(mpath, "matrix has no rows");
      std::size_t cols = 0;
      for (std::size_t r = 0; r < m.size(); ++r) {
        require_array(m[r], at(mpath, r));
        if (r == 0) cols = m[r].size();
        if (m[r].size() != cols || cols == 0) fail(at(mpath, r), "rows must be non-empty and of equal length");
      }
      cm.matrix.resize(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(cols));
      for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t j = 0; j < cols; ++j) cm.matrix(r, j) = rational_from_json(m[r][j], at(at(mpath, r), j));
      cm.certificate.primal_witness = optional_vector(c, "primal_witness", path);
      cm.certificate.achieved_image = optional_vector(c, "achieved_image", path);
      cm.certificate.dual_witness = optional_vector(c, "dual_witness", path);
      doc.certificates.push_back(std::move(cm));
    }
  }
  return doc;
}

}  // namespace herd
