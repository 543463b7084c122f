#include "herd/herdability.hpp"

#include <cstdint>

namespace herd {

namespace {

Rational squared_norm(const VectorQ& v) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += v(i) * v(i);
  return s;
}

}  // namespace

bool verify_certificate(const MatrixQ& c, const Certificate& cert) {
  const bool exact = cert.backend == Backend::kExact;
  if (cert.herdable) {
    if (!cert.primal_witness || !cert.achieved_image || cert.dual_witness) return false;
    const VectorQ& x = *cert.primal_witness;
    const VectorQ& v = *cert.achieved_image;
    if (x.size() != c.cols() || v.size() != c.rows()) return false;
    const VectorQ cx = c * x;
    const Rational floor = exact ? Rational(1) : Rational(1) - to_rational(kPrimalMargin);
    for (Eigen::Index i = 0; i < cx.size(); ++i) {
      if (cx(i) < floor) return false;
      if (exact) {
        if (v(i) != cx(i)) return false;
      } else {
        const Rational diff = abs_of(Rational(v(i) - cx(i)));
        const Rational mag = abs_of(cx(i)) > 1 ? abs_of(cx(i)) : Rational(1);
        if (diff > to_rational(kPrimalMargin) * mag) return false;
      }
    }
    return true;
  }
  if (!cert.dual_witness || cert.primal_witness || cert.achieved_image) return false;
  const VectorQ& y = *cert.dual_witness;
  if (y.size() != c.rows()) return false;
  Rational total = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) < 0) return false;
    total += y(i);
  }
  if (total == 0) return false;
  const VectorQ cty = c.transpose() * y;
  if (exact) return total == 1 && cty.isZero(0);
  const Rational tol2 = to_rational(kDualTolerance) * to_rational(kDualTolerance);
  const Rational y2 = squared_norm(y);
  for (Eigen::Index j = 0; j < c.cols(); ++j)
    if (cty(j) * cty(j) > tol2 * squared_norm(VectorQ(c.col(j))) * y2) return false;
  return true;
}

HerdabilityVerdict<double> decide_with_fallback(const Matrix<double>& c, Backend* used) {
  try {
    auto v = is_completely_herdable<double>(c);
    if (used != nullptr) *used = Backend::kFloat;
    return v;
  } catch (const UndecidedError&) {
    const auto exact = is_completely_herdable<Rational>(matrix_cast<Rational>(c));
    if (used != nullptr) *used = Backend::kExact;
    HerdabilityVerdict<double> v;
    v.herdable = exact.herdable;
    v.backend = Backend::kExact;
    if (exact.primal_witness) v.primal_witness = vector_cast<double>(*exact.primal_witness);
    if (exact.achieved_image) v.achieved_image = vector_cast<double>(*exact.achieved_image);
    if (exact.dual_witness) v.dual_witness = vector_cast<double>(*exact.dual_witness);
    return v;
  }
}

Certificate certify_with_fallback(const Matrix<double>& c) {
  try {
    return to_certificate(is_completely_herdable<double>(c));
  } catch (const UndecidedError&) {
    return to_certificate(is_completely_herdable<Rational>(matrix_cast<Rational>(c)));
  }
}

namespace {

template <typename Scalar>
std::set<NodeId> node_set_search(const Matrix<Scalar>& c, int cap) {
  const int n = static_cast<int>(c.rows());
  if (n > cap)
    throw SizeError("exact node-set search is capped at " + std::to_string(cap) + " nodes, got " +
                    std::to_string(n) + " (use the greedy mode)");
  std::vector<int> candidates;
  for (int i = 0; i < n; ++i)
    if (!c.row(i).isZero(0)) candidates.push_back(i);
  const int m = static_cast<int>(candidates.size());

  // Masks over candidate positions; any superset of a stored mask is infeasible.
  std::vector<std::uint32_t> infeasible;
  auto pruned = [&](std::uint32_t mask) {
    for (std::uint32_t core : infeasible)
      if ((mask & core) == core) return true;
    return false;
  };

  for (int k = m; k >= 1; --k) {
    // Lexicographic enumeration of k-subsets of candidate positions.
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
      std::uint32_t mask = 0;
      for (int p : pick) mask |= 1u << p;
      if (!pruned(mask)) {
        std::vector<int> rows;
        for (int p : pick) rows.push_back(candidates[p]);
        std::vector<int> core;
        if (rows_feasible<Scalar>(c, rows, &core)) {
          std::set<NodeId> out;
          for (int r : rows) out.insert(r + 1);
          return out;
        }
        std::uint32_t core_mask = 0;
        for (int r : core)
          for (int p = 0; p < m; ++p)
            if (candidates[p] == r) core_mask |= 1u << p;
        infeasible.push_back(core_mask != 0 ? core_mask : mask);
      }
      int i = k - 1;
      while (i >= 0 && pick[i] == m - k + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return {};
}

}  // namespace

std::set<NodeId> herdable_node_set(const MatrixQ& c, int cap) { return node_set_search<Rational>(c, cap); }

std::set<NodeId> herdable_node_set(const Matrix<double>& c, int cap) {
  return node_set_search<double>(c, cap);
}

std::set<NodeId> herdable_node_set_greedy(const Matrix<double>& c) {
  std::vector<int> kept;
  for (int i = 0; i < c.rows(); ++i) {
    if (c.row(i).isZero(0)) continue;
    kept.push_back(i);
    if (!rows_feasible<double>(c, kept)) kept.pop_back();
  }
  std::set<NodeId> out;
  for (int r : kept) out.insert(r + 1);
  return out;
}

}  // namespace herd
