#pragma once

#include <algorithm>
#include <vector>

#include "herd/errors.hpp"
#include "herd/scalar.hpp"

namespace herd {

enum class LpStatus { kFeasible, kInfeasible, kStalled };

template <typename Scalar>
struct LpResult {
  LpStatus status = LpStatus::kStalled;
  Vector<Scalar> solution;  // present when feasible
  int iterations = 0;
};

struct SimplexOptions {
  /// Pivot and feasibility tolerance; ignored (treated as 0) for rationals.
  double tolerance = 1e-11;
  /// Iteration cap; 0 picks 50 * (rows + cols) + 1000.
  int max_iterations = 0;
};

/// Phase one of the simplex method with Bland's rule: finds z >= 0 with
/// M z = b, or reports infeasibility. Exact for rational scalars.
template <typename Scalar>
LpResult<Scalar> find_nonnegative_solution(const Matrix<Scalar>& m, const Vector<Scalar>& b,
                                           const SimplexOptions& options = {}) {
  if (m.rows() != b.size()) throw InvalidArgumentError("right-hand side length does not match rows");
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  const Scalar eps = kIsExact<Scalar> ? Scalar(0) : Scalar(options.tolerance);
  const int cap = options.max_iterations > 0 ? options.max_iterations
                                             : static_cast<int>(50 * (rows + cols) + 1000);

  // Tableau [M | I | b] with rows flipped so that b >= 0; artificials start basic.
  const Eigen::Index width = cols + rows + 1;
  Matrix<Scalar> t = Matrix<Scalar>::Zero(rows + 1, width);
  std::vector<Eigen::Index> basis(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const bool flip = b(i) < 0;
    for (Eigen::Index j = 0; j < cols; ++j) t(i, j) = flip ? Scalar(-m(i, j)) : m(i, j);
    t(i, cols + i) = 1;
    t(i, width - 1) = flip ? Scalar(-b(i)) : b(i);
    basis[i] = cols + i;
  }
  // Objective row: reduced costs of minimizing the artificial sum.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) t(rows, j) -= t(i, j);
    t(rows, width - 1) -= t(i, width - 1);
  }

  LpResult<Scalar> result;
  for (;;) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < cols + rows; ++j) {
      if (t(rows, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    if (result.iterations >= cap) {
      result.status = LpStatus::kStalled;
      return result;
    }
    Eigen::Index leave = -1;
    Scalar best_ratio(0);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (!(t(i, enter) > eps)) continue;
      const Scalar ratio = t(i, width - 1) / t(i, enter);
      if (leave < 0 || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    // Phase one is bounded below by zero, so an entering column always has a
    // positive entry; a missing one means the float tableau has degraded.
    if (leave < 0) {
      result.status = LpStatus::kStalled;
      return result;
    }
    const Scalar pivot = t(leave, enter);
    t.row(leave) /= pivot;
    for (Eigen::Index i = 0; i <= rows; ++i) {
      if (i == leave || t(i, enter) == 0) continue;
      const Scalar f = t(i, enter);
      t.row(i) -= f * t.row(leave);
    }
    basis[leave] = enter;
    ++result.iterations;
  }

  Scalar scale(1);
  if constexpr (!kIsExact<Scalar>) scale = std::max(1.0, b.cwiseAbs().sum());
  const Scalar residual = -t(rows, width - 1);
  if (residual > eps * scale * Scalar(100)) {
    result.status = LpStatus::kInfeasible;
    return result;
  }
  result.status = LpStatus::kFeasible;
  result.solution = Vector<Scalar>::Zero(cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (basis[i] < cols) {
      const Scalar v = t(i, width - 1);
      result.solution(basis[i]) = v < 0 ? Scalar(0) : v;
    }
  }
  return result;
}

}  // namespace herd
