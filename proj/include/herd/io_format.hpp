#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "herd/herdability.hpp"
#include "herd/layered_graph.hpp"
#include "herd/path_matching.hpp"
#include "herd/realization.hpp"
#include "herd/signed_digraph.hpp"
#include "herd/temporal_analysis.hpp"

namespace herd {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Contents of a `.herdnet` file. Weights are signed matrix entries in the
/// graph's edge order. Numbers written as integers, "p/q" or decimal strings,
/// or [p, q] pairs are exact; a JSON floating-point literal anywhere makes
/// the document float-only (`exact` is false), though its value is still
/// held exactly as the double it denotes.
struct GraphDocument {
  struct SnapshotEntry {
    std::vector<Rational> weights;
    Rational duration{1};
  };

  std::shared_ptr<const SignedDigraph> graph;
  Rational leader_gain{1};
  std::optional<std::vector<Rational>> weights;
  std::vector<SnapshotEntry> snapshots;
  bool exact = true;
  std::vector<std::string> warnings;

  /// Base weights when given, unit magnitudes otherwise.
  Realization<Rational> base_realization() const;
  /// The declared snapshots, or the base weights as one snapshot of
  /// duration 1 when only those are given.
  std::optional<TemporalNetwork<Rational>> temporal_network() const;
  InputPattern<Rational> input() const { return InputPattern<Rational>(leader_gain); }
};

/// Unweighted document for `g`.
GraphDocument make_document(std::shared_ptr<const SignedDigraph> g);

/// Throws ParseError (with the path of the offending field) on schema
/// violations and ConsistencyError when weights contradict the sign
/// pattern or a snapshot does not cover exactly the edge list.
GraphDocument parse_graph(std::string_view text);
GraphDocument read_graph_file(const std::string& path);
std::string serialize_graph(const GraphDocument& doc);

/// [numerator, denominator]; components beyond int64 become decimal strings.
Json rational_json(const Rational& value);
Rational rational_from_json(const Json& value, const std::string& path);
Json vector_json(const VectorQ& v);
Json matrix_json(const MatrixQ& m);

Json to_json(const ValidationReport& report);
Json to_json(const PathMatchReport& report);
Json to_json(const AnalysisReport& report);
Json to_json(const SamplerResult& result);
Json to_json(const SynthesisResult& result, const SignedDigraph& g);
Json layered_json(const LayeredGraph<Rational>& lg);
Json certificate_json(const CertifiedMatrix& c);

/// `.report` documents: {"format", "version", "kind", "result",
/// "certificates"}. Output is byte-stable for equal inputs.
struct ReportDocument {
  std::string kind;
  Json result = Json::object();
  std::vector<CertifiedMatrix> certificates;
  std::vector<std::string> warnings;
};

std::string serialize_report(const ReportDocument& report);
ReportDocument parse_report(std::string_view text);

/// Whole file as a string; ParseError when it cannot be read.
std::string read_text_file(const std::string& path);

}  // namespace herd
