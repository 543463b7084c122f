#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "herd/errors.hpp"
#include "herd/realization.hpp"
#include "herd/scalar.hpp"

namespace herd {

inline constexpr double kExponentialTolerance = 1e-12;
inline constexpr double kRankTolerance = 1e-9;

/// [b, A b, ..., A^{n-1} b] for an arbitrary input column `b`.
template <typename Scalar>
Matrix<Scalar> krylov_matrix(const Matrix<Scalar>& a, const Vector<Scalar>& b) {
  const Eigen::Index n = a.rows();
  Matrix<Scalar> c(n, n);
  Vector<Scalar> col = b;
  for (Eigen::Index k = 0; k < n; ++k) {
    c.col(k) = col;
    if (k + 1 < n) col = (a * col).eval();
  }
  return c;
}

/// Snapshot controllability matrix: column k+1 is A^k B with B = e_leader b1.
template <typename Scalar>
Matrix<Scalar> controllability_matrix(const Realization<Scalar>& r, const InputPattern<Scalar>& b) {
  Vector<Scalar> e = Vector<Scalar>::Zero(r.size());
  e(r.graph().leader() - 1) = b.leader_gain();
  return krylov_matrix<Scalar>(r.matrix(), e);
}

/// Exact check A^n == 0 (exact in double as well when the products are
/// exactly representable).
template <typename Scalar>
bool is_nilpotent(const Matrix<Scalar>& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return true;
  Matrix<Scalar> p = a;
  for (Eigen::Index k = 1; k < n; ++k) {
    if (p.isZero(0)) return true;
    p = (p * a).eval();
  }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (p(i, j) != 0) return false;
  return true;
}

namespace detail {

// Finite series sum_k (A^k t^k) / k! for nilpotent A. Each term is formed as
// (A^k * t^k) / k! so integer data rounds once per term.
template <typename Scalar>
Matrix<Scalar> nilpotent_exponential(const Matrix<Scalar>& a, const Scalar& t) {
  const Eigen::Index n = a.rows();
  Matrix<Scalar> result = Matrix<Scalar>::Identity(n, n);
  Matrix<Scalar> power = Matrix<Scalar>::Identity(n, n);
  Scalar t_power(1);
  Scalar factorial(1);
  for (Eigen::Index k = 1; k < n; ++k) {
    power = (power * a).eval();
    if (power.isZero(0)) break;
    t_power = t_power * t;
    factorial = factorial * Scalar(static_cast<double>(k));
    result += ((power * t_power) / factorial).eval();
  }
  return result;
}

inline double one_norm(const Matrix<double>& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace detail

/// e^{A t}. The double path uses scaling and squaring with a Taylor series
/// whose order comes from the remainder bound at ||A t / 2^s||_1 <= 1/2; a
/// nilpotent A takes the finite series. The exact path only exists for
/// nilpotent A and throws NumericError otherwise.
template <typename Scalar>
Matrix<Scalar> matrix_exponential(const Matrix<Scalar>& a, const Scalar& t,
                                  double tol = kExponentialTolerance) {
  if (!(tol > 0)) throw InvalidArgumentError("exponential tolerance must be positive");
  if (a.rows() != a.cols()) throw InvalidArgumentError("matrix exponential needs a square matrix");
  if constexpr (kIsExact<Scalar>) {
    if (!is_nilpotent(a))
      throw NumericError("exact matrix exponential requires a nilpotent matrix");
    return detail::nilpotent_exponential(a, t);
  } else {
    if (!a.allFinite() || !std::isfinite(t)) throw NumericError("non-finite matrix exponential input");
    if (is_nilpotent(a)) return detail::nilpotent_exponential(a, t);
    const Eigen::Index n = a.rows();
    const Matrix<double> x = a * t;
    const double norm = detail::one_norm(x);
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const Matrix<double> scaled = x / std::ldexp(1.0, squarings);
    const double theta = detail::one_norm(scaled);

    // Remainder of the order-m series is below theta^{m+1}/(m+1)! * 2 for theta <= 1/2.
    // Aim under one ulp relative so the squarings do not amplify truncation.
    const double target = std::min(tol, std::numeric_limits<double>::epsilon()) * 0.5;
    int order = 1;
    double term = theta;
    while (order < 40 && 2.0 * term * theta / (order + 1) > target) {
      term = term * theta / (order + 1);
      ++order;
    }

    Matrix<double> result = Matrix<double>::Identity(n, n);
    Matrix<double> power = Matrix<double>::Identity(n, n);
    for (int k = 1; k <= order; ++k) {
      power = (power * scaled / static_cast<double>(k)).eval();
      result += power;
    }
    for (int s = 0; s < squarings; ++s) result = (result * result).eval();
    if (!result.allFinite()) throw NumericError("matrix exponential overflowed");
    return result;
  }
}

/// Columns of the temporal controllability matrix grouped by snapshot.
struct BlockRange {
  int snapshot = 0;  // 1-based snapshot index
  Eigen::Index first_column = 0;
  Eigen::Index column_count = 0;
};

template <typename Scalar>
struct BlockControllabilityMatrix {
  Matrix<Scalar> entries;
  std::vector<BlockRange> blocks;  // snapshot p first, snapshot 1 last
  Backend backend = backend_of<Scalar>();
};

/// [C_p | e^{A_p dt_p} C_{p-1} | ... | e^{A_p dt_p} ... e^{A_2 dt_2} C_1],
/// with interval durations dt_i.
template <typename Scalar>
BlockControllabilityMatrix<Scalar> temporal_controllability_matrix(
    const TemporalNetwork<Scalar>& tn, double tol = kExponentialTolerance) {
  const Eigen::Index n = tn.node_count();
  const std::size_t p = tn.size();
  BlockControllabilityMatrix<Scalar> out;
  out.entries.resize(n, static_cast<Eigen::Index>(p) * n);
  Matrix<Scalar> transition = Matrix<Scalar>::Identity(n, n);
  for (std::size_t k = p; k-- > 0;) {
    const auto& snap = tn.snapshot(k);
    const Eigen::Index first = static_cast<Eigen::Index>(p - 1 - k) * n;
    out.entries.middleCols(first, n) = transition * controllability_matrix(snap.realization, tn.input());
    out.blocks.push_back({static_cast<int>(k + 1), first, n});
    if (k > 0)
      transition = (transition * matrix_exponential<Scalar>(snap.realization.matrix(), snap.duration, tol))
                       .eval();
  }
  return out;
}

/// e^{A_p dt_p} ... e^{A_1 dt_1}: maps x(t_0) to its free response at t_f.
template <typename Scalar>
Matrix<Scalar> state_transition(const TemporalNetwork<Scalar>& tn, double tol = kExponentialTolerance) {
  const Eigen::Index n = tn.node_count();
  Matrix<Scalar> phi = Matrix<Scalar>::Identity(n, n);
  for (const auto& s : tn.snapshots())
    phi = (matrix_exponential<Scalar>(s.realization.matrix(), s.duration, tol) * phi).eval();
  return phi;
}

/// Rank by singular values above rel_tol * sigma_max, after scaling every
/// nonzero column to unit length.
int numerical_rank(const Matrix<double>& m, double rel_tol = kRankTolerance);

/// Rank by fraction-free Gaussian elimination over the rationals.
int exact_rank(const MatrixQ& m);

template <typename Scalar>
int rank_of(const Matrix<Scalar>& m) {
  if constexpr (kIsExact<Scalar>)
    return exact_rank(m);
  else
    return numerical_rank(m);
}

/// Basis of the right null space of `m` over the rationals (columns).
MatrixQ exact_null_space(const MatrixQ& m);

}  // namespace herd
