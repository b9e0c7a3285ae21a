#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfn/interpolation.hpp"
#include "mfn/poisedness.hpp"
#include "mfn/test_functions.hpp"
#include "mfn/types.hpp"

namespace mfn {

struct SolverOptions {
  /// Number of interpolation points; 2n + 1 when unset.
  std::optional<std::size_t> num_points;
  double initial_radius = 1.0;
  /// The run ends once the trust radius falls below this value.
  double final_radius = 1e-8;
  /// Upper cap on the trust radius, as a multiple of the initial radius.
  double max_radius_factor = 1e3;
  std::size_t max_evaluations = 500;
  /// Converged when ||model gradient at the best point|| <= this at the final radius.
  double gradient_tolerance = 1e-6;
  KktOptions kkt;
};

enum class SolverStatus { converged, budget_exhausted, stalled, non_finite_value };
enum class StepKind { initialization, accepted, rejected, geometry, radius_reduction };

std::string_view to_string(SolverStatus status);
std::string_view to_string(StepKind kind);

struct HistoryEntry {
  std::size_t iteration = 0;
  std::size_t evaluations = 0;
  double best_value = 0.0;
  double radius = 0.0;
  StepKind kind = StepKind::initialization;
};

/// Snapshot handed to the observer after initialization and after every iteration.
struct SolverState {
  InterpolationSet set;
  std::vector<double> values;
  QuadraticModel model;
  double radius = 0.0;
  Vector best_point;
  double best_value = 0.0;
  std::size_t evaluations = 0;
  std::size_t iteration = 0;
  StepKind last_step = StepKind::initialization;
};

struct SolverResult {
  Vector best_point;
  double best_value = 0.0;
  std::size_t evaluations = 0;
  SolverStatus status = SolverStatus::stalled;
  std::vector<HistoryEntry> history;
  std::string diagnostic;
};

using SolverObserver = std::function<void(const SolverState&)>;

/// Derivative-free trust-region minimization with minimum Frobenius norm models.
///
/// Starts from Powell's set around x0 (m evaluations) and then, per iteration, either
/// takes a Euclidean trust-region step on the model and swaps that point into the set,
/// replaces a far point by a maximizer of its Lagrange polynomial, or only shrinks the
/// radius. At most one interpolation point changes per iteration, and the model is
/// refitted by the least-change update. The objective is called sequentially.
SolverResult solve(const Objective& objective, const Vector& x0, const SolverOptions& options = {},
                   const SolverObserver& observer = {});

/// Maximizer of |L_index| over the ball; replacing y_index by it is the geometry step.
Vector geometry_improvement_point(const InterpolationSet& set, std::size_t index, const LpBall& ball,
                                  const PoisednessOptions& options = {});

/// CSV with header iteration,evaluations,best_value,trust_radius,step_type.
std::string history_csv(const std::vector<HistoryEntry>& history);

}  // namespace mfn
