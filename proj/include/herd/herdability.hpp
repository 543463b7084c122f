#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "herd/errors.hpp"
#include "herd/scalar.hpp"
#include "herd/signed_digraph.hpp"
#include "herd/simplex.hpp"

namespace herd {

inline constexpr double kPrimalMargin = 1e-9;
inline constexpr double kDualTolerance = 1e-9;
inline constexpr int kNodeSetSearchCap = 16;

/// Outcome of the test C x >= 1. A herdable verdict carries x and the image
/// v = C x; a negative one carries y >= 0 with C^T y = 0 and 1^T y = 1.
template <typename Scalar>
struct HerdabilityVerdict {
  bool herdable = false;
  std::optional<Vector<Scalar>> primal_witness;
  std::optional<Vector<Scalar>> achieved_image;
  std::optional<Vector<Scalar>> dual_witness;
  Backend backend = backend_of<Scalar>();
};

/// Backend-neutral form of a verdict; the float backend's doubles convert
/// exactly. This is what reports store and `verify` re-checks.
struct Certificate {
  Backend backend = Backend::kExact;
  bool herdable = false;
  std::optional<VectorQ> primal_witness;
  std::optional<VectorQ> achieved_image;
  std::optional<VectorQ> dual_witness;
};

template <typename Scalar>
Certificate to_certificate(const HerdabilityVerdict<Scalar>& v) {
  Certificate c;
  c.backend = v.backend;
  c.herdable = v.herdable;
  if (v.primal_witness) c.primal_witness = vector_cast<Rational>(*v.primal_witness);
  if (v.achieved_image) c.achieved_image = vector_cast<Rational>(*v.achieved_image);
  if (v.dual_witness) c.dual_witness = vector_cast<Rational>(*v.dual_witness);
  return c;
}

/// Re-checks a certificate against C in exact arithmetic, with the float
/// backend's tolerances when the certificate declares it:
///   herdable: C x >= 1 - 1e-9 and v matches C x;
///   otherwise: y >= 0, y != 0, |c_j^T y| <= 1e-9 ||c_j|| ||y|| per column.
bool verify_certificate(const MatrixQ& c, const Certificate& cert);

template <typename Scalar>
bool verify_certificate(const Matrix<Scalar>& c, const HerdabilityVerdict<Scalar>& verdict) {
  return verify_certificate(matrix_cast<Rational>(c), to_certificate(verdict));
}

namespace detail {

template <typename Scalar>
std::optional<Vector<Scalar>> primal_solve(const Matrix<Scalar>& c, const SimplexOptions& opt, bool& stalled) {
  const Eigen::Index n = c.rows(), q = c.cols();
  Matrix<Scalar> m(n, 2 * q + n);
  m << c, -c, -Matrix<Scalar>::Identity(n, n);
  const auto res = find_nonnegative_solution<Scalar>(m, Vector<Scalar>::Ones(n), opt);
  if (res.status == LpStatus::kStalled) stalled = true;
  if (res.status != LpStatus::kFeasible) return std::nullopt;
  return Vector<Scalar>(res.solution.head(q) - res.solution.segment(q, q));
}

template <typename Scalar>
std::optional<Vector<Scalar>> dual_solve(const Matrix<Scalar>& c, const SimplexOptions& opt, bool& stalled) {
  const Eigen::Index n = c.rows(), q = c.cols();
  Matrix<Scalar> m(q + 1, n);
  m << c.transpose(), Matrix<Scalar>::Ones(1, n);
  Vector<Scalar> rhs = Vector<Scalar>::Zero(q + 1);
  rhs(q) = 1;
  const auto res = find_nonnegative_solution<Scalar>(m, rhs, opt);
  if (res.status == LpStatus::kStalled) stalled = true;
  if (res.status != LpStatus::kFeasible) return std::nullopt;
  return res.solution;
}

}  // namespace detail

/// Decides whether C x >= 1 is feasible and returns the matching Farkas
/// certificate. Rational input is decided exactly. Doubles are normalized by
/// each column's largest entry and both witnesses are re-substituted; if neither
/// survives, UndecidedError asks the caller to retry with rationals.
template <typename Scalar>
HerdabilityVerdict<Scalar> is_completely_herdable(const Matrix<Scalar>& c, const SimplexOptions& options = {}) {
  if (c.rows() < 1 || c.cols() < 1) throw InvalidArgumentError("herdability needs a non-empty matrix");
  HerdabilityVerdict<Scalar> verdict;
  bool stalled = false;
  if constexpr (kIsExact<Scalar>) {
    if (auto x = detail::primal_solve<Scalar>(c, options, stalled)) {
      verdict.herdable = true;
      verdict.achieved_image = Vector<Scalar>(c * *x);
      verdict.primal_witness = std::move(x);
      return verdict;
    }
    auto y = detail::dual_solve<Scalar>(c, options, stalled);
    if (!y) throw ConsistencyError("neither the primal nor the dual system is feasible");
    verdict.dual_witness = std::move(y);
    return verdict;
  } else {
    if (!c.allFinite()) throw NumericError("controllability matrix has non-finite entries");
    // Positive column scaling preserves both the primal and the dual system.
    Vector<double> scale(c.cols());
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      const double s = c.col(j).cwiseAbs().maxCoeff();
      scale(j) = s > 0 ? s : 1.0;
    }
    if (c.isZero(0)) {
      verdict.dual_witness = Vector<double>::Constant(c.rows(), 1.0 / c.rows());
      return verdict;
    }
    const Matrix<double> cn = c * scale.cwiseInverse().asDiagonal();

    if (auto x = detail::primal_solve<double>(cn, options, stalled)) {
      Vector<double> xs = x->cwiseQuotient(scale);
      Vector<double> v = c * xs;
      const double lo = v.minCoeff();
      if (lo > 0) {
        xs /= std::min(lo, 1.0);
        v = c * xs;
        if (v.minCoeff() >= 1.0 - kPrimalMargin) {
          verdict.herdable = true;
          verdict.primal_witness = xs;
          verdict.achieved_image = v;
          return verdict;
        }
      }
    }
    if (auto y = detail::dual_solve<double>(cn, options, stalled)) {
      Vector<double> ys = y->cwiseMax(0.0);
      const double total = ys.sum();
      if (total > 0) {
        ys /= total;
        const Vector<double> cty = c.transpose() * ys;
        bool ok = true;
        for (Eigen::Index j = 0; j < c.cols(); ++j)
          ok = ok && std::abs(cty(j)) <= kDualTolerance * c.col(j).norm() * ys.norm();
        if (ok) {
          verdict.dual_witness = ys;
          return verdict;
        }
      }
    }
    throw UndecidedError(stalled ? "float simplex stalled at the iteration cap"
                                 : "float witnesses failed re-substitution");
  }
}

/// Herdability in float with an exact fallback when the float path is
/// undecided (the exact path requires a matrix of exactly representable
/// entries, which every double is).
HerdabilityVerdict<double> decide_with_fallback(const Matrix<double>& c, Backend* used = nullptr);

/// As decide_with_fallback, but keeps exact witnesses exact when the
/// fallback runs (the verdict form rounds them back to double).
Certificate certify_with_fallback(const Matrix<double>& c);

/// Whether the rows `rows` (0-based) of C can be driven to >= 1 together.
/// On infeasibility `core` (if given) receives the support of the dual
/// witness, a subset of `rows` that is already infeasible.
template <typename Scalar>
bool rows_feasible(const Matrix<Scalar>& c, const std::vector<int>& rows, std::vector<int>* core = nullptr) {
  if (rows.empty()) return true;
  Matrix<Scalar> sub(static_cast<Eigen::Index>(rows.size()), c.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) sub.row(i) = c.row(rows[i]);
  HerdabilityVerdict<Scalar> v;
  if constexpr (kIsExact<Scalar>)
    v = is_completely_herdable<Scalar>(sub);
  else
    v = decide_with_fallback(sub);
  if (!v.herdable && core != nullptr) {
    core->clear();
    for (std::size_t i = 0; i < rows.size(); ++i)
      if ((*v.dual_witness)(i) != 0) core->push_back(rows[i]);
  }
  return v.herdable;
}

/// Maximum-cardinality node set S (1-based ids) such that (C x)_i >= 1 for
/// all i in S is feasible; the lexicographically smallest among maximal
/// ones. Zero rows never qualify. Throws SizeError above `cap` rows.
std::set<NodeId> herdable_node_set(const MatrixQ& c, int cap = kNodeSetSearchCap);
std::set<NodeId> herdable_node_set(const Matrix<double>& c, int cap = kNodeSetSearchCap);

/// Greedy approximation: visits rows in id order and keeps each one that
/// stays jointly feasible. Not guaranteed maximal in cardinality.
std::set<NodeId> herdable_node_set_greedy(const Matrix<double>& c);

}  // namespace herd
