#include "herd/linalg.hpp"

#include <Eigen/SVD>

namespace herd {

int numerical_rank(const Matrix<double>& m, double rel_tol) {
  if (!(rel_tol > 0)) throw InvalidArgumentError("rank tolerance must be positive");
  if (m.size() == 0) return 0;
  // Krylov columns grow geometrically; unit columns keep small ones visible.
  Matrix<double> scaled = m;
  for (Eigen::Index j = 0; j < scaled.cols(); ++j) {
    const double norm = scaled.col(j).norm();
    if (norm > 0) scaled.col(j) /= norm;
  }
  Eigen::JacobiSVD<Matrix<double>> svd(scaled);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double threshold = rel_tol * s(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > threshold) ++rank;
  return rank;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<Eigen::Index> row_reduce(MatrixQ& r) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < r.cols() && row < r.rows(); ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = row; i < r.rows(); ++i)
      if (r(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    r.row(row).swap(r.row(pivot));
    const Rational lead = r(row, col);
    for (Eigen::Index j = col; j < r.cols(); ++j) r(row, j) /= lead;
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, col) == 0) continue;
      const Rational f = r(i, col);
      for (Eigen::Index j = col; j < r.cols(); ++j) r(i, j) -= f * r(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int exact_rank(const MatrixQ& m) {
  MatrixQ r = m;
  return static_cast<int>(row_reduce(r).size());
}

MatrixQ exact_null_space(const MatrixQ& m) {
  MatrixQ r = m;
  const auto pivots = row_reduce(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  MatrixQ basis = MatrixQ::Zero(m.cols(), static_cast<Eigen::Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], k) = 1;
    for (std::size_t p = 0; p < pivots.size(); ++p) basis(pivots[p], k) = -r(p, free[k]);
  }
  return basis;
}

}  // namespace herd
