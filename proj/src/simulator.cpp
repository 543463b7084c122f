#include "herd/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "herd/linalg.hpp"

namespace herd {

InputSignal InputSignal::zero() { return {[](double) { return 0.0; }, {}}; }

InputSignal InputSignal::constant(double u) { return {[u](double) { return u; }, {}}; }

double PiecewiseInput::at(double t) const {
  if (values.empty()) return 0.0;
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const auto k = std::clamp<std::ptrdiff_t>(it - times.begin() - 1, 0, static_cast<std::ptrdiff_t>(values.size()) - 1);
  return values[k];
}

InputSignal PiecewiseInput::signal() const {
  InputSignal s;
  s.value = [copy = *this](double t) { return copy.at(t); };
  if (times.size() > 2) s.breakpoints.assign(times.begin() + 1, times.end() - 1);
  return s;
}

namespace {

// Cumulative snapshot boundaries t_0 = 0, ..., t_p.
std::vector<double> boundaries(const TemporalNetwork<double>& tn) {
  std::vector<double> out{0.0};
  for (const auto& s : tn.snapshots()) out.push_back(out.back() + s.duration);
  return out;
}

double segment_time(double start, double dt, int j, int segments) {
  return j == segments ? start + dt : start + dt * j / segments;
}

}  // namespace

PiecewiseInput design_input(const TemporalNetwork<double>& tn, const Vector<double>& target,
                            const DesignOptions& options) {
  const Eigen::Index n = tn.node_count();
  const int s = options.segments_per_snapshot;
  if (s < 1) throw InvalidArgumentError("segments per snapshot must be at least 1");
  if (target.size() != n) throw InvalidArgumentError("target has the wrong dimension");
  if (!target.allFinite()) throw InvalidArgumentError("target must be finite");
  const int p = static_cast<int>(tn.size());
  const Vector<double> b = tn.input_vector();

  PiecewiseInput out;
  out.segments_per_snapshot = s;
  const auto bounds = boundaries(tn);
  for (int k = 0; k < p; ++k)
    for (int j = 0; j < s; ++j) out.times.push_back(segment_time(bounds[k], tn.snapshot(k).duration, j, s));
  out.times.push_back(bounds.back());

  // Column c of M maps segment value c to x(t_f).
  Matrix<double> m(n, p * s);
  Matrix<double> after = Matrix<double>::Identity(n, n);
  for (int k = p - 1; k >= 0; --k) {
    const auto& snap = tn.snapshot(k);
    for (int j = s - 1; j >= 0; --j) {
      const double h = out.times[k * s + j + 1] - out.times[k * s + j];
      Matrix<double> aug = Matrix<double>::Zero(n + 1, n + 1);
      aug.topLeftCorner(n, n) = snap.realization.matrix();
      aug.topRightCorner(n, 1) = b;
      const Matrix<double> e = matrix_exponential<double>(aug, h);
      m.col(k * s + j) = after * e.topRightCorner(n, 1);
      after = (after * e.topLeftCorner(n, n)).eval();
    }
  }

  Eigen::JacobiSVD<Matrix<double>> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  svd.setThreshold(1e-10);
  out.map_rank = static_cast<int>(svd.rank());
  out.map_condition = out.map_rank > 0 ? sv(0) / sv(out.map_rank - 1) : 0.0;
  const Vector<double> u = out.map_rank > 0 ? Vector<double>(svd.solve(target)) : Vector<double>::Zero(p * s);
  out.values.assign(u.data(), u.data() + u.size());
  out.residual = (m * u - target).norm();
  if (out.residual > options.tolerance * std::max(1.0, target.norm()))
    throw UnreachableTargetError("target lies outside the reachable subspace (residual " +
                                 std::to_string(out.residual) + ")");
  return out;
}

Trajectory simulate(const TemporalNetwork<double>& tn, const InputSignal& input, const Vector<double>& x0,
                    double step) {
  const Eigen::Index n = tn.node_count();
  if (x0.size() != n) throw InvalidArgumentError("initial state has the wrong dimension");
  double min_dt = std::numeric_limits<double>::infinity();
  for (const auto& s : tn.snapshots()) min_dt = std::min(min_dt, s.duration);
  if (!(step > 0) || step > min_dt / 10 * (1 + 1e-12))
    throw InvalidArgumentError("step must satisfy 0 < step <= min dt / 10");
  if (!input.value) throw InvalidArgumentError("input signal has no value function");

  const auto bounds = boundaries(tn);
  const double tf = bounds.back();
  std::vector<double> points = bounds;
  for (double t : input.breakpoints)
    if (t > 0 && t < tf) points.push_back(t);
  std::sort(points.begin(), points.end());
  const double merge = 1e-12 * tf;
  std::vector<double> grid_points;
  for (double t : points)
    if (grid_points.empty() || t - grid_points.back() > merge) grid_points.push_back(t);
  grid_points.back() = tf;

  const Vector<double> b = tn.input_vector();
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(x0);
  traj.inputs.push_back(input.value(0.0));
  Vector<double> x = x0;
  std::size_t snap = 0;
  for (std::size_t i = 0; i + 1 < grid_points.size(); ++i) {
    const double a = grid_points[i], z = grid_points[i + 1];
    const double mid = 0.5 * (a + z);
    while (snap + 1 < tn.size() && mid >= bounds[snap + 1]) ++snap;
    const Matrix<double>& am = tn.snapshot(snap).realization.matrix();
    const double last = std::nextafter(z, a);
    auto f = [&](double t, const Vector<double>& state) -> Vector<double> {
      return am * state + b * input.value(std::min(t, last));
    };
    const int steps = std::max(1, static_cast<int>(std::ceil((z - a) / step - 1e-9)));
    const double h = (z - a) / steps;
    for (int k = 0; k < steps; ++k) {
      const double t = a + h * k;
      const Vector<double> k1 = f(t, x);
      const Vector<double> k2 = f(t + h / 2, x + h / 2 * k1);
      const Vector<double> k3 = f(t + h / 2, x + h / 2 * k2);
      const Vector<double> k4 = f(t + h, x + h * k3);
      x += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
      const double t_next = k + 1 == steps ? z : a + h * (k + 1);
      if (!x.allFinite()) throw DivergenceError("state became non-finite at t = " + std::to_string(t_next));
      traj.times.push_back(t_next);
      traj.states.push_back(x);
      traj.inputs.push_back(input.value(t_next == tf ? std::nextafter(tf, 0.0) : t_next));
    }
  }
  return traj;
}

HerdPlan herd_from(const TemporalNetwork<double>& tn, const Vector<double>& x0, const Vector<double>& image,
                   double h, const DesignOptions& options) {
  if (!(h > 0)) throw InvalidArgumentError("threshold h must be positive");
  if (image.size() != tn.node_count() || x0.size() != tn.node_count())
    throw InvalidArgumentError("state vectors have the wrong dimension");
  if (!(image.minCoeff() > 0)) throw InvalidArgumentError("achieved image must be strictly positive");
  HerdPlan plan;
  plan.free_response = state_transition(tn) * x0;
  double scale = 0.0;
  for (Eigen::Index i = 0; i < image.size(); ++i)
    scale = std::max(scale, (h - plan.free_response(i)) / image(i));
  plan.scale = scale;
  plan.input = design_input(tn, scale * image, options);
  plan.predicted = plan.free_response + scale * image;
  return plan;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const Eigen::Index n = traj.states.empty() ? 0 : traj.states.front().size();
  os << 't';
  for (Eigen::Index i = 1; i <= n; ++i) os << ",x" << i;
  os << ",u\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    os << format_scalar(traj.times[k]);
    for (Eigen::Index i = 0; i < n; ++i) os << ',' << format_scalar(traj.states[k](i));
    os << ',' << format_scalar(traj.inputs[k]) << '\n';
  }
}

}  // namespace herd
