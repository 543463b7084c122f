#pragma once

#include <functional>
#include <ostream>
#include <vector>

#include "herd/realization.hpp"

namespace herd {

inline constexpr int kDefaultSegments = 20;

/// Scalar input u(t) on [0, t_f]. Breakpoints (interior discontinuities)
/// are integrated across exactly; the value at a breakpoint belongs to the
/// interval on its right.
struct InputSignal {
  std::function<double(double)> value;
  std::vector<double> breakpoints;

  static InputSignal zero();
  static InputSignal constant(double u);
};

/// Piecewise-constant input: `values[k]` holds on [times[k], times[k+1]).
struct PiecewiseInput {
  std::vector<double> times;
  std::vector<double> values;
  int segments_per_snapshot = kDefaultSegments;
  /// Rank and sigma_max / sigma_min (nonzero singular values) of the
  /// discretized reachability map; the Gramian's condition is its square.
  int map_rank = 0;
  double map_condition = 0;
  /// ||M u - v|| for the least-squares solution.
  double residual = 0;

  double at(double t) const;
  InputSignal signal() const;
};

struct DesignOptions {
  int segments_per_snapshot = kDefaultSegments;
  /// Relative residual beyond which the target counts as unreachable.
  double tolerance = 1e-8;
};

/// Least-norm piecewise-constant input steering x(0) = 0 to `target` at
/// t_f. Each snapshot is cut into equal segments; the map from segment
/// values to x(t_f) comes from exp([[A, B], [0, 0]] h). Throws
/// UnreachableTargetError when the residual exceeds tolerance * max(1, ||v||).
PiecewiseInput design_input(const TemporalNetwork<double>& tn, const Vector<double>& target,
                            const DesignOptions& options = {});

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector<double>> states;
  std::vector<double> inputs;

  const Vector<double>& final_state() const { return states.back(); }
};

/// Classical RK4 on a grid aligned to snapshot boundaries and input
/// breakpoints, with steps no longer than `step`. Requires
/// 0 < step <= min dt / 10. Throws DivergenceError on a non-finite state.
Trajectory simulate(const TemporalNetwork<double>& tn, const InputSignal& input, const Vector<double>& x0,
                    double step);

/// Input for a nonzero initial state: the free response Phi x0 plus
/// lambda * v, with the smallest lambda >= 0 lifting every node to h.
struct HerdPlan {
  PiecewiseInput input;
  double scale = 0;
  Vector<double> free_response;
  Vector<double> predicted;
};

HerdPlan herd_from(const TemporalNetwork<double>& tn, const Vector<double>& x0, const Vector<double>& image,
                   double h = 1.0, const DesignOptions& options = {});

/// CSV with header "t,x1,...,xn,u"; values in shortest round-trip form.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace herd
