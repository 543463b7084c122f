#include "herd/io_format.hpp"

#include <gtest/gtest.h>

#include "herd/instance_gen.hpp"
#include "herd/linalg.hpp"
#include "test_graphs.hpp"

namespace herd {
namespace {

std::string fixture(const std::string& name) { return std::string(HERD_FIXTURE_DIR) + "/" + name; }

std::string minimal(const std::string& edges, const std::string& extra = "") {
  return R"({"format": "herdnet", "version": 1, "nodes": 3, "leader": 1, "edges": )" + edges + extra + "}";
}

TEST(GraphFormatTest, Fig2aFixture) {
  const auto doc = read_graph_file(fixture("fig2a.herdnet"));
  EXPECT_EQ(*doc.graph, *testing::fig2a());
  EXPECT_EQ(doc.graph->leader(), 1);
  EXPECT_FALSE(doc.weights);
  EXPECT_TRUE(doc.snapshots.empty());
  EXPECT_TRUE(doc.exact);
  EXPECT_TRUE(doc.warnings.empty());
}

TEST(GraphFormatTest, SingleNode) {
  const auto doc = read_graph_file(fixture("single_node.herdnet"));
  EXPECT_EQ(doc.graph->node_count(), 1);
  EXPECT_EQ(doc.graph->edge_count(), 0u);
  EXPECT_TRUE(validate(*doc.graph).admissible());
}

TEST(GraphFormatTest, SnapshotSignFlipIsInconsistent) {
  EXPECT_THROW(read_graph_file(fixture("sign_flip.herdnet")), ConsistencyError);
}

TEST(GraphFormatTest, SnapshotsBuildTheTemporalNetwork) {
  const auto doc = read_graph_file(fixture("fig2a_a1a2.herdnet"));
  ASSERT_EQ(doc.snapshots.size(), 2u);
  const auto tn = doc.temporal_network();
  ASSERT_TRUE(tn);
  EXPECT_EQ(tn->snapshot(1).realization.matrix()(3, 0), Rational(-4));
  EXPECT_EQ(tn->snapshot(1).duration, Rational(1));
}

TEST(GraphFormatTest, ErrorsNameTheField) {
  auto message = [](const std::string& text) -> std::string {
    try {
      parse_graph(text);
    } catch (const ParseError& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_NE(message(R"({"format": "herdnet", "nodes": 2, "edges": []})").find("version"), std::string::npos);
  EXPECT_NE(message(minimal(R"([{"from": 1, "to": 2, "sign": "+"}, {"from": 1, "to": 3, "sign": "x"}])"))
                .find("edges[1].sign"),
            std::string::npos);
  EXPECT_NE(message(minimal(R"([{"from": 1, "to": 2, "sign": "+", "weight": "1/0"}])")).find("edges[0].weight"),
            std::string::npos);
  EXPECT_NE(message(minimal(R"([{"from": "a", "to": 2, "sign": "+"}])")).find("edges[0].from"), std::string::npos);
  EXPECT_NE(message("{not json").find("malformed"), std::string::npos);
  EXPECT_NE(message(R"({"format": "herdnet", "version": 2, "nodes": 1, "edges": []})").find("unsupported"),
            std::string::npos);
}

TEST(GraphFormatTest, UnknownFieldsWarn) {
  const auto doc = parse_graph(minimal(R"([{"from": 1, "to": 2, "sign": "+", "colour": "red"}])", R"(, "extra": 1)"));
  ASSERT_EQ(doc.warnings.size(), 2u);
  EXPECT_NE(doc.warnings[0].find("extra"), std::string::npos);
  EXPECT_NE(doc.warnings[1].find("edges[0].colour"), std::string::npos);
}

TEST(GraphFormatTest, NumberEncodings) {
  const auto doc = parse_graph(
      minimal(R"([{"from": 1, "to": 2, "sign": "+", "weight": "3/4"}, {"from": 1, "to": 3, "sign": "-", "weight": [-5, 2]}])"));
  EXPECT_TRUE(doc.exact);
  EXPECT_EQ((*doc.weights)[0], Rational(3, 4));
  EXPECT_EQ((*doc.weights)[1], Rational(-5, 2));
  const auto fl = parse_graph(minimal(R"([{"from": 1, "to": 2, "sign": "+", "weight": 0.1}])"));
  EXPECT_FALSE(fl.exact);
  EXPECT_EQ((*fl.weights)[0], to_rational(0.1));
  const auto big = parse_graph(minimal(R"([{"from": 1, "to": 2, "sign": "+", "weight": ["123456789012345678901234567890", 7]}])"));
  EXPECT_EQ((*big.weights)[0], parse_rational("123456789012345678901234567890/7"));
}

TEST(GraphFormatTest, WeightSignMustMatch) {
  EXPECT_THROW(parse_graph(minimal(R"([{"from": 1, "to": 2, "sign": "-", "weight": 2}])")), ConsistencyError);
  EXPECT_THROW(parse_graph(minimal(R"([{"from": 1, "to": 2, "sign": "+", "weight": 0}])")), ConsistencyError);
  EXPECT_THROW(parse_graph(minimal(R"([{"from": 1, "to": 2, "sign": "+", "weight": 1}, {"from": 1, "to": 3, "sign": "+"}])")),
               ConsistencyError);
}

TEST(GraphFormatTest, SnapshotsMustCoverTheEdgeList) {
  const std::string edges = R"([{"from": 1, "to": 2, "sign": "+"}, {"from": 1, "to": 3, "sign": "-"}])";
  EXPECT_THROW(parse_graph(minimal(edges, R"(, "snapshots": [{"weights": [{"from": 1, "to": 2, "weight": 1}]}])")),
               ConsistencyError);
  EXPECT_THROW(parse_graph(minimal(edges, R"(, "snapshots": [{"weights": [{"from": 1, "to": 2, "weight": 1},
      {"from": 1, "to": 3, "weight": -1}, {"from": 2, "to": 3, "weight": 1}]}])")),
               ConsistencyError);
  EXPECT_THROW(parse_graph(minimal(edges, R"(, "snapshots": [{"duration": 0, "weights": []}])")), ParseError);
}

TEST(GraphFormatTest, FixturesRoundTrip) {
  for (const char* name : {"fig2a", "fig2a_a1a2", "fig2b", "fig3", "fig4", "fig4_mixed", "single_node", "oscillator"}) {
    const auto doc = read_graph_file(fixture(std::string(name) + ".herdnet"));
    const std::string text = serialize_graph(doc);
    const auto again = parse_graph(text);
    EXPECT_EQ(*again.graph, *doc.graph) << name;
    EXPECT_EQ(again.weights, doc.weights) << name;
    ASSERT_EQ(again.snapshots.size(), doc.snapshots.size()) << name;
    for (std::size_t k = 0; k < doc.snapshots.size(); ++k) {
      EXPECT_EQ(again.snapshots[k].weights, doc.snapshots[k].weights);
      EXPECT_EQ(again.snapshots[k].duration, doc.snapshots[k].duration);
    }
    EXPECT_EQ(serialize_graph(again), text) << name;
  }
}

TEST(GraphFormatTest, FloatDocumentsRoundTrip) {
  const auto doc = parse_graph(minimal(R"([{"from": 1, "to": 2, "sign": "+", "weight": 0.1}, {"from": 2, "to": 3, "sign": "-", "weight": -2}])"));
  const auto again = parse_graph(serialize_graph(doc));
  EXPECT_FALSE(again.exact);
  EXPECT_EQ(again.weights, doc.weights);
}

TEST(GraphFormatTest, GeneratedGraphsRoundTrip) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto topo = static_cast<Topology>(seed % 3);
    const auto g = std::make_shared<const SignedDigraph>(generate({1 + static_cast<int>(seed % 9), topo, SignPolicy::kRandom, seed}));
    const auto doc = parse_graph(serialize_graph(make_document(g)));
    EXPECT_EQ(*doc.graph, *g) << seed;
  }
}

TEST(ReportFormatTest, RationalPairs) {
  EXPECT_EQ(rational_json(Rational(-3, 4)).dump(), "[-3,4]");
  const Rational big = parse_rational("98765432109876543210987654321/1024");
  EXPECT_EQ(rational_json(big).dump(), R"(["98765432109876543210987654321",1024])");
  EXPECT_EQ(rational_from_json(rational_json(big), "x"), big);
  EXPECT_THROW(rational_from_json(Json(0.5), "x"), ParseError);
}

ReportDocument sample_report() {
  ReportDocument report;
  report.kind = "verdict";
  report.result["note"] = "sample";
  const MatrixQ c1 = controllability_matrix(Realization<Rational>::unit(testing::fig2a()), InputPattern<Rational>());
  report.certificates.push_back({"static", c1, to_certificate(is_completely_herdable<Rational>(c1))});

  const auto g = testing::fig2a();
  const TemporalNetwork<Rational> tn({{Realization<Rational>::unit(g), Rational(1)},
                                      {testing::realize<Rational>(g, {2, 3, 4}), Rational(1)}});
  const MatrixQ ct = temporal_controllability_matrix(tn).entries;
  report.certificates.push_back({"pair", ct, to_certificate(is_completely_herdable<Rational>(ct))});

  const auto cyc = testing::make_graph(3, {{1, 2, testing::P}, {2, 3, testing::P}, {3, 2, testing::N}});
  const TemporalNetwork<double> tf({{Realization<double>::from_magnitudes(cyc, {1.0, 0.3, 0.7}), 0.5}});
  const Matrix<double> cf = temporal_controllability_matrix(tf).entries;
  report.certificates.push_back({"float", matrix_cast<Rational>(cf), certify_with_fallback(cf)});
  return report;
}

TEST(ReportFormatTest, CertificatesRoundTripAndVerify) {
  const auto report = sample_report();
  const std::string text = serialize_report(report);
  const auto parsed = parse_report(text);
  EXPECT_EQ(parsed.kind, "verdict");
  EXPECT_EQ(parsed.result["note"], "sample");
  ASSERT_EQ(parsed.certificates.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& a = report.certificates[i];
    const auto& b = parsed.certificates[i];
    EXPECT_EQ(b.label, a.label);
    EXPECT_EQ(b.matrix, a.matrix);
    EXPECT_EQ(b.certificate.backend, a.certificate.backend);
    EXPECT_EQ(b.certificate.herdable, a.certificate.herdable);
    EXPECT_EQ(b.certificate.primal_witness, a.certificate.primal_witness);
    EXPECT_EQ(b.certificate.dual_witness, a.certificate.dual_witness);
    EXPECT_TRUE(verify_certificate(b.matrix, b.certificate)) << b.label;
  }
  EXPECT_FALSE(parsed.certificates[0].certificate.herdable);
  EXPECT_TRUE(parsed.certificates[1].certificate.herdable);
  EXPECT_EQ(serialize_report(parsed), text);
  EXPECT_EQ(serialize_report(sample_report()), text);
}

TEST(ReportFormatTest, TamperedCertificateFails) {
  auto report = sample_report();
  std::string text = serialize_report(report);
  auto parsed = parse_report(text);
  (*parsed.certificates[1].certificate.primal_witness)(0) -= 10;
  EXPECT_FALSE(verify_certificate(parsed.certificates[1].matrix, parsed.certificates[1].certificate));
}

TEST(ReportFormatTest, SchemaErrors) {
  EXPECT_THROW(parse_report(R"({"format": "herd-report", "version": 1})"), ParseError);
  EXPECT_THROW(parse_report(R"({"format": "herdnet", "version": 1, "kind": "x"})"), ParseError);
  EXPECT_THROW(parse_report(R"({"format": "herd-report", "version": 1, "kind": "x", "certificates": [{"label": "a",
      "backend": "exact", "herdable": true, "matrix": [[[1, 1]], []]}]})"),
               ParseError);
}

TEST(ReportFormatTest, AnalysisJsonShape) {
  const auto report = minimal_snapshot_count(testing::fig2a());
  const Json j = to_json(report);
  EXPECT_EQ(j["minimal_p"], 2);
  EXPECT_EQ(j["steps"].size(), 2u);
  EXPECT_EQ(j["steps"][1]["durations"].dump(), "[[1,1],[1,1]]");
  EXPECT_EQ(j["signed_dilations"].dump(), "[1]");
  EXPECT_EQ(j["instance"], instance_digest(*testing::fig2a()));
}

}  // namespace
}  // namespace herd
