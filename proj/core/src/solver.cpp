#include "mfn/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "mfn/ball_max.hpp"
#include "mfn/errors.hpp"
#include "mfn/lagrange.hpp"
#include "mfn/powell_set.hpp"

namespace mfn {

std::string_view to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::converged: return "converged";
    case SolverStatus::budget_exhausted: return "budget-exhausted";
    case SolverStatus::stalled: return "stalled";
    case SolverStatus::non_finite_value: return "non-finite-value";
  }
  return "unknown";
}

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::initialization: return "init";
    case StepKind::accepted: return "accepted";
    case StepKind::rejected: return "rejected";
    case StepKind::geometry: return "geometry";
    case StepKind::radius_reduction: return "shrink";
  }
  return "unknown";
}

Vector geometry_improvement_point(const InterpolationSet& set, std::size_t index, const LpBall& ball,
                                  const PoisednessOptions& options) {
  if (index >= set.size()) {
    throw RangeError("point index " + std::to_string(index) + " outside [0, " +
                     std::to_string(set.size() - 1) + "]");
  }
  const KktSystem system = KktSystem::assemble(set, options.kkt);
  const std::vector<double> unit = [&] {
    std::vector<double> v(set.size(), 0.0);
    v[index] = 1.0;
    return v;
  }();
  const QuadraticModel lagrange = system.interpolate(unit);
  return max_abs_quadratic_over_ball(lagrange, ball, options.ball_max).point;
}

namespace {

class Run {
 public:
  Run(const Objective& objective, const Vector& x0, const SolverOptions& options,
      const SolverObserver& observer)
      : objective_(objective),
        options_(options),
        observer_(observer),
        n_(static_cast<std::size_t>(x0.size())),
        set_(powell_initial_set(n_, options.num_points.value_or(default_point_count(n_)),
                                options.initial_radius, x0)),
        model_(QuadraticModel::zero(n_)),
        radius_(options.initial_radius) {
    if (options.max_evaluations < set_.size()) {
      throw RangeError("max evaluations " + std::to_string(options.max_evaluations) +
                       " is below the " + std::to_string(set_.size()) + " initial evaluations");
    }
    if (!(options.final_radius > 0.0) || options.final_radius > options.initial_radius) {
      throw RangeError("final radius must lie in (0, initial radius]");
    }
  }

  SolverResult run() {
    for (std::size_t i = 0; i < set_.size(); ++i) {
      const auto f = evaluate(set_.point(i));
      if (!f) return finish(SolverStatus::non_finite_value);
      values_.push_back(*f);
    }
    model_ = interpolate_sym_broyden(set_, values_, QuadraticModel::zero(n_), options_.kkt);
    record(StepKind::initialization);

    bool geometry_pending = false;
    while (true) {
      const std::size_t center_index = best_in_set();
      const Vector center = set_.point(center_index);
      if (radius_ <= options_.final_radius) {
        const double gnorm = model_.gradient_at(center).norm();
        return finish(gnorm <= options_.gradient_tolerance ? SolverStatus::converged : SolverStatus::stalled);
      }
      if (evaluations_ >= options_.max_evaluations) return finish(SolverStatus::budget_exhausted);

      if (geometry_pending) {
        geometry_pending = false;
        const auto [far, distance] = farthest(center, center_index);
        if (distance > 2.0 * radius_) {
          const LpBall ball(center, radius_, NormOrder::finite(2.0));
          Vector x;
          try {
            x = geometry_improvement_point(set_, far, ball, {options_.kkt, {}});
          } catch (const Error&) {
            x = center;
          }
          if (x != center) {
            const auto f = evaluate(x);
            if (!f) return finish(SolverStatus::non_finite_value);
            if (replace(far, x, *f)) {
              record(StepKind::geometry);
              continue;
            }
          }
        }
      }

      const QuadraticModel local = model_.rebased(center);
      const TrustRegionStep step =
          solve_trust_region_subproblem(local.gradient(), local.hessian(), radius_);
      const Vector trial = center + step.step;
      const double predicted = local.constant_term() - local.evaluate(trial);
      const double fcenter = values_[center_index];
      if (!(predicted > 1e-14 * (1.0 + std::abs(fcenter))) || step.step.norm() <= 1e-3 * radius_) {
        const auto [far, distance] = farthest(center, center_index);
        geometry_pending = distance > 2.0 * radius_;
        radius_ *= 0.5;
        record(StepKind::radius_reduction);
        continue;
      }

      const auto f = evaluate(trial);
      if (!f) return finish(SolverStatus::non_finite_value);
      const double ratio = (fcenter - *f) / predicted;

      bool inserted = false;
      for (std::size_t index : replacement_order(center, center_index, trial, *f < fcenter)) {
        if (replace(index, trial, *f)) {
          inserted = true;
          break;
        }
      }
      if (ratio < 0.1 || !inserted) {
        radius_ *= 0.5;
        const auto [far, distance] = farthest(set_.point(best_in_set()), best_in_set());
        geometry_pending = distance > 2.0 * radius_;
      } else if (ratio > 0.7) {
        radius_ = std::min(2.0 * radius_, options_.max_radius_factor * options_.initial_radius);
      }
      record(ratio >= 0.1 && *f < fcenter ? StepKind::accepted : StepKind::rejected);
    }
  }

 private:
  std::optional<double> evaluate(const Vector& x) {
    ++evaluations_;
    const double f = objective_(x);
    if (!std::isfinite(f)) {
      diagnostic_ = "objective returned a non-finite value at evaluation " + std::to_string(evaluations_);
      return std::nullopt;
    }
    if (best_point_.size() == 0 || f < best_value_) {
      best_value_ = f;
      best_point_ = x;
    }
    return f;
  }

  std::size_t best_in_set() const {
    return static_cast<std::size_t>(std::min_element(values_.begin(), values_.end()) - values_.begin());
  }

  std::pair<std::size_t, double> farthest(const Vector& center, std::size_t skip) const {
    std::size_t index = skip;
    double distance = -1.0;
    for (std::size_t i = 0; i < set_.size(); ++i) {
      if (i == skip) continue;
      const double d = (set_.point(i) - center).norm();
      if (d > distance) {
        distance = d;
        index = i;
      }
    }
    return {index, distance};
  }

  /// Farthest from the center first; ties by larger |L_i(trial)|, then lower index.
  std::vector<std::size_t> replacement_order(const Vector& center, std::size_t center_index,
                                             const Vector& trial, bool improved) const {
    std::vector<double> lag(set_.size(), 0.0);
    try {
      const auto polys = lagrange_polynomials_numeric(set_, options_.kkt);
      for (std::size_t i = 0; i < set_.size(); ++i) lag[i] = std::abs(polys[i].evaluate(trial));
    } catch (const Error&) {
    }
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < set_.size(); ++i) {
      if (i != center_index) order.push_back(i);
    }
    std::vector<double> dist(set_.size());
    for (std::size_t i = 0; i < set_.size(); ++i) dist[i] = (set_.point(i) - center).norm();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (dist[a] != dist[b]) return dist[a] > dist[b];
      if (lag[a] != lag[b]) return lag[a] > lag[b];
      return a < b;
    });
    // The center is a last resort, and only when the trial point improves on it.
    if (improved) order.push_back(center_index);
    return order;
  }

  bool replace(std::size_t index, const Vector& x, double f) {
    InterpolationSet candidate = set_.with_point(index, x);
    if (!is_poised(candidate, options_.kkt).poised) return false;
    std::vector<double> values = values_;
    values[index] = f;
    try {
      model_ = interpolate_sym_broyden(candidate, values, model_, options_.kkt);
    } catch (const Error&) {
      return false;
    }
    set_ = std::move(candidate);
    values_ = std::move(values);
    return true;
  }

  void record(StepKind kind) {
    history_.push_back({iteration_, evaluations_, best_value_, radius_, kind});
    if (observer_) {
      observer_(SolverState{set_, values_, model_, radius_, best_point_, best_value_, evaluations_,
                            iteration_, kind});
    }
    ++iteration_;
  }

  SolverResult finish(SolverStatus status) {
    SolverResult r;
    r.best_point = best_point_;
    r.best_value = best_value_;
    r.evaluations = evaluations_;
    r.status = status;
    r.history = std::move(history_);
    r.diagnostic = diagnostic_;
    return r;
  }

  const Objective& objective_;
  const SolverOptions& options_;
  const SolverObserver& observer_;
  std::size_t n_;
  InterpolationSet set_;
  std::vector<double> values_;
  QuadraticModel model_;
  double radius_;
  Vector best_point_;
  double best_value_ = 0.0;
  std::size_t evaluations_ = 0;
  std::size_t iteration_ = 0;
  std::vector<HistoryEntry> history_;
  std::string diagnostic_;
};

}  // namespace

SolverResult solve(const Objective& objective, const Vector& x0, const SolverOptions& options,
                   const SolverObserver& observer) {
  if (x0.size() == 0) throw DimensionError("x0 must have dimension >= 1");
  if (!objective) throw Error("objective is empty");
  return Run(objective, x0, options, observer).run();
}

std::string history_csv(const std::vector<HistoryEntry>& history) {
  std::string out = "iteration,evaluations,best_value,trust_radius,step_type\n";
  char buf[128];
  for (const auto& h : history) {
    std::snprintf(buf, sizeof(buf), "%zu,%zu,%.17g,%.17g,", h.iteration, h.evaluations, h.best_value, h.radius);
    out += buf;
    out += to_string(h.kind);
    out += '\n';
  }
  return out;
}

}  // namespace mfn
