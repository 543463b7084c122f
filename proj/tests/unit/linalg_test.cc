#include "herd/linalg.hpp"

#include <random>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "test_graphs.hpp"

namespace herd {
namespace {

using testing::N;
using testing::P;

MatrixQ rational_matrix(int rows, int cols, std::initializer_list<Rational> entries) {
  MatrixQ m(rows, cols);
  auto it = entries.begin();
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = *it++;
  return m;
}

Matrix<double> random_matrix(std::mt19937& rng, int n, double radius) {
  std::normal_distribution<double> normal;
  Matrix<double> a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = normal(rng);
  const double rho = a.eigenvalues().cwiseAbs().maxCoeff();
  return a * (radius / rho);
}

TEST(LinalgTest, Fig2aControllabilityMatrix) {
  const auto r = Realization<Rational>::unit(testing::fig2a());
  const MatrixQ c = controllability_matrix(r, InputPattern<Rational>());
  const MatrixQ expected = rational_matrix(4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, -1, 0, 0, 0, -1, 0, 0});
  EXPECT_EQ(c, expected);
}

TEST(LinalgTest, ZeroMatrixControllability) {
  const auto r = Realization<double>::unit(std::make_shared<const SignedDigraph>(3, std::vector<SignedEdge>{}));
  const Matrix<double> c = controllability_matrix(r, InputPattern<double>(2.0));
  Matrix<double> expected = Matrix<double>::Zero(3, 3);
  expected(0, 0) = 2.0;
  EXPECT_EQ(c, expected);
}

TEST(LinalgTest, SecondRealizationColumn) {
  const auto r = testing::realize<Rational>(testing::fig2a(), {2, 3, 4});
  const MatrixQ c = controllability_matrix(r, InputPattern<Rational>());
  EXPECT_EQ(c.col(1), rational_matrix(4, 1, {0, 2, -3, -4}));
}

TEST(LinalgTest, ExponentialBasics) {
  const Matrix<double> zero = Matrix<double>::Zero(3, 3);
  EXPECT_EQ(matrix_exponential<double>(zero, 1.0), (Matrix<double>::Identity(3, 3)));

  const auto a = Realization<Rational>::unit(testing::fig2a()).matrix();
  const MatrixQ e = matrix_exponential<Rational>(a, Rational(1));
  EXPECT_EQ(e, MatrixQ(MatrixQ::Identity(4, 4) + a));

  const Matrix<double> one = Matrix<double>::Constant(1, 1, 1.0);
  EXPECT_NEAR(matrix_exponential<double>(one, 1.0)(0, 0), std::exp(1.0), 1e-12);

  EXPECT_THROW(matrix_exponential<double>(one, 1.0, 0.0), InvalidArgumentError);
  Matrix<double> bad = one;
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(matrix_exponential<double>(bad, 1.0), NumericError);
  EXPECT_THROW(matrix_exponential<Rational>(MatrixQ::Identity(2, 2), Rational(1)), NumericError);
}

TEST(LinalgTest, ExponentialMatchesEigenOracle) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> time(0.05, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    const Matrix<double> a = random_matrix(rng, n, 2.0);
    const double t = time(rng);
    const Matrix<double> oracle = (a * t).exp();
    const Matrix<double> ours = matrix_exponential<double>(a, t);
    EXPECT_LE((ours - oracle).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, oracle.cwiseAbs().maxCoeff()))
        << "trial " << trial;
  }
}

TEST(LinalgTest, ExponentialSemigroup) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> time(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    const Matrix<double> a = random_matrix(rng, n, 2.0);
    const double s = time(rng), t = time(rng);
    const Matrix<double> lhs = matrix_exponential<double>(a, s + t);
    const Matrix<double> rhs = matrix_exponential<double>(a, s) * matrix_exponential<double>(a, t);
    EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 10 * kExponentialTolerance);
  }
}

TEST(LinalgTest, NilpotentSeriesIsExactInBothBackends) {
  const auto g = testing::fig3();
  const auto rq = testing::realize<Rational>(g, {2, 3, 5, 7, 11, 13});
  const auto rd = rq.cast<double>();
  EXPECT_TRUE(is_nilpotent(rq.matrix()));
  for (const Rational t : {Rational(1), Rational(1, 2), Rational(3)}) {
    const MatrixQ exact = matrix_exponential<Rational>(rq.matrix(), t);
    const Matrix<double> fl = matrix_exponential<double>(rd.matrix(), t.convert_to<double>());
    EXPECT_EQ(matrix_cast<double>(exact), fl);
  }
  EXPECT_FALSE(is_nilpotent(Matrix<double>(Matrix<double>::Identity(2, 2))));
}

TEST(LinalgTest, PaperTwoSnapshotMatrix) {
  const auto g = testing::fig2a();
  const auto a1 = Realization<Rational>::unit(g);
  const auto a2 = testing::realize<Rational>(g, {2, 3, 4});
  for (const Rational t : {Rational(1), Rational(1, 3), Rational(5)}) {
    const TemporalNetwork<Rational> tn({{a1, Rational(1)}, {a2, t}});
    const auto ct = temporal_controllability_matrix(tn);
    const MatrixQ expected = rational_matrix(
        4, 8, {1, 0, 0, 0, 1, 0, 0, 0, 0, 2, 0, 0, 2 * t, 1, 0, 0,  //
               0, -3, 0, 0, -3 * t, -1, 0, 0, 0, -4, 0, 0, -4 * t, -1, 0, 0});
    EXPECT_EQ(ct.entries, expected);
    ASSERT_EQ(ct.blocks.size(), 2u);
    EXPECT_EQ(ct.blocks[0].snapshot, 2);
    EXPECT_EQ(ct.blocks[1].first_column, 4);
  }
}

TEST(LinalgTest, SingleSnapshotIsTheSnapshotMatrix) {
  const auto r = testing::realize<Rational>(testing::fig4(), {1, 2, 3, 4, 5, 6});
  const TemporalNetwork<Rational> tn({{r, Rational(7)}});
  EXPECT_EQ(temporal_controllability_matrix(tn).entries, controllability_matrix(r, InputPattern<Rational>()));
}

TEST(LinalgTest, Fig2bSigmaStructure) {
  // Edge order: 1->2, 1->3, 2->4, 2->5, 3->6. Snapshot 1 carries a, snapshot 2 carries d.
  const auto g = testing::fig2b();
  const auto a = testing::realize<Rational>(g, {2, 3, 5, 7, 11});
  const auto d = testing::realize<Rational>(g, {13, 17, 19, 23, 29});
  auto w = [](const Realization<Rational>& r, int from, int to) { return r.matrix()(to - 1, from - 1); };
  for (const Rational t : {Rational(1), Rational(2, 3)}) {
    const TemporalNetwork<Rational> tn({{a, Rational(1)}, {d, t}});
    const MatrixQ c = temporal_controllability_matrix(tn).entries;
    MatrixQ expected = MatrixQ::Zero(6, 12);
    expected(0, 0) = 1;
    expected(1, 1) = w(d, 1, 2);
    expected(2, 1) = w(d, 1, 3);
    expected(3, 2) = w(d, 1, 2) * w(d, 2, 4);
    expected(4, 2) = w(d, 1, 2) * w(d, 2, 5);
    expected(5, 2) = w(d, 1, 3) * w(d, 3, 6);
    expected(0, 6) = 1;
    expected(1, 6) = w(d, 1, 2) * t;                                // sigma_1
    expected(2, 6) = w(d, 1, 3) * t;                                // sigma_2
    expected(3, 6) = w(d, 1, 2) * w(d, 2, 4) * t * t / 2;           // sigma_3
    expected(4, 6) = w(d, 1, 2) * w(d, 2, 5) * t * t / 2;           // sigma_5
    expected(5, 6) = w(d, 1, 3) * w(d, 3, 6) * t * t / 2;           // sigma_7
    expected(1, 7) = w(a, 1, 2);
    expected(2, 7) = w(a, 1, 3);
    expected(3, 7) = w(a, 1, 2) * w(d, 2, 4) * t;                   // sigma_4
    expected(4, 7) = w(a, 1, 2) * w(d, 2, 5) * t;                   // sigma_6
    expected(5, 7) = w(a, 1, 3) * w(d, 3, 6) * t;                   // sigma_8
    expected(3, 8) = w(a, 1, 2) * w(a, 2, 4);
    expected(4, 8) = w(a, 1, 2) * w(a, 2, 5);
    expected(5, 8) = w(a, 1, 3) * w(a, 3, 6);
    EXPECT_EQ(c, expected);
  }
}

TEST(LinalgTest, Ranks) {
  EXPECT_EQ(numerical_rank(Matrix<double>::Zero(3, 3)), 0);
  EXPECT_EQ(numerical_rank(Matrix<double>::Identity(4, 4)), 4);
  EXPECT_EQ(exact_rank(MatrixQ::Zero(3, 3)), 0);
  EXPECT_EQ(exact_rank(MatrixQ::Identity(4, 4)), 4);

  const auto r = Realization<Rational>::unit(testing::fig2a());
  const auto tn = TemporalNetwork<Rational>::repeated(r, {Rational(1), Rational(1)});
  const MatrixQ ct = temporal_controllability_matrix(tn).entries;
  EXPECT_EQ(exact_rank(ct), 2);
  EXPECT_EQ(numerical_rank(matrix_cast<double>(ct)), 2);
  EXPECT_THROW(numerical_rank(Matrix<double>::Identity(2, 2), 0.0), InvalidArgumentError);
}

TEST(LinalgTest, ExactNullSpace) {
  const MatrixQ m = rational_matrix(2, 4, {1, 2, 0, -1, 0, 0, 1, 3});
  const MatrixQ basis = exact_null_space(m);
  EXPECT_EQ(basis.cols(), 2);
  EXPECT_TRUE((m * basis).isZero(0));
  EXPECT_EQ(exact_rank(basis), 2);
}

TEST(LinalgTest, RankInvariantUnderIdenticalSwitching) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> mag(1, 4);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 5;
    std::vector<SignedEdge> edges;
    for (int v = 2; v <= n; ++v) {
      std::uniform_int_distribution<int> parent(1, v - 1);
      edges.push_back({parent(rng), v, coin(rng) ? P : N});
    }
    const auto g = testing::make_graph(n, edges);
    std::vector<Rational> w;
    for (std::size_t i = 0; i < g->edge_count(); ++i) w.push_back(mag(rng));
    const auto r = Realization<Rational>::from_magnitudes(g, w);
    const int base = exact_rank(controllability_matrix(r, InputPattern<Rational>()));
    for (const Rational dt : {Rational(1, 2), Rational(1), Rational(2)}) {
      const auto tn = TemporalNetwork<Rational>::repeated(r, {dt, dt, dt});
      EXPECT_EQ(exact_rank(temporal_controllability_matrix(tn).entries), base);
    }
  }
}

}  // namespace
}  // namespace herd
