#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "mfn/ball_max.hpp"
#include "mfn/interpolation.hpp"
#include "mfn/types.hpp"

namespace mfn {

enum class PoisednessMethod { closed_form, certified_numeric, heuristic_numeric };

std::string_view to_string(PoisednessMethod method);

struct PoisednessOptions {
  KktOptions kkt;
  BallMaxOptions ball_max;
};

/// Constant of well-poisedness of a set in a ball: max_i max_{x in ball} |L_i(x)|.
struct PoisednessReport {
  /// max |L_i| over the ball, one entry per interpolation point.
  std::vector<double> per_index;
  double lambda = 0.0;
  /// 0-based index attaining lambda (lowest index among near-ties).
  std::size_t argmax = 0;
  std::vector<Vector> witnesses;
  PoisednessMethod method = PoisednessMethod::certified_numeric;
  std::optional<LpBall> ball;
};

/// Computes every Lagrange polynomial numerically and maximizes its absolute value
/// over the ball. The method records the weakest certification that was used.
PoisednessReport poisedness_constant_numeric(const InterpolationSet& set, const LpBall& ball,
                                             const PoisednessOptions& options = {});

/// Numeric constant of Powell's initial set with m points in B_p(delta) around the origin.
PoisednessReport powell_lambda_numeric(std::size_t n, std::size_t m, NormOrder p, double delta = 1.0,
                                       const PoisednessOptions& options = {});

enum class ClosedFormSource {
  small_order,  ///< p in [1, 2]: 1 + (2n+1-m)^{(p-1)/p}
  full_set,     ///< m = 2n+1: max{1, n^{(p-2)/p} - 1}
  box,          ///< p = inf: max{n-1, 2n-m+2}
};

std::string_view to_string(ClosedFormSource source);

struct ClosedFormLambda {
  std::optional<double> value;
  std::vector<ClosedFormSource> sources;
};

/// Known closed forms for the constant of Powell's set; empty when p in (2, inf) and m < 2n+1.
/// When several formulas apply their agreement is checked (std::logic_error otherwise).
ClosedFormLambda lambda_p_closed(std::size_t n, std::size_t m, NormOrder p);

struct LambdaBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// 1 + (2n+1-m)^{(p-1)/p} <= Lambda_p <= n.
LambdaBounds lambda_p_bounds(std::size_t n, std::size_t m, NormOrder p);

/// True when n <= 2 or 1 <= p <= 2 log n / log(n/2) (natural logarithms).
bool default_set_is_optimal(std::size_t n, NormOrder p);

struct OptimalityGap {
  double lambda = 0.0;
  /// Constant of Powell's set with m = 2n + 1 in the same ball.
  double reference = 0.0;
  bool satisfies_theorem = false;
  /// Whether the optimality guarantee covers (n, p).
  bool theorem_applies = false;
  PoisednessReport report;
};

/// Compares the constant of a set containing the ball center against Powell's default set.
/// Throws RangeError when no point equals the center.
OptimalityGap optimality_gap(const InterpolationSet& set, const LpBall& ball,
                             const PoisednessOptions& options = {});

enum class SweepMode { closed, numeric, both };

struct SweepRow {
  std::size_t n = 0;
  std::size_t m = 0;
  NormOrder p = NormOrder::infinity();
  double delta = 1.0;
  std::optional<double> closed;
  std::optional<double> numeric;
  std::optional<double> abs_diff;
  PoisednessMethod method = PoisednessMethod::closed_form;
  Vector witness;
};

/// One row per m in [n+2, 2n+1], in increasing m.
std::vector<SweepRow> sweep_lambda_vs_m(std::size_t n, NormOrder p, double delta, SweepMode mode,
                                        const PoisednessOptions& options = {});

/// Uniform sample from the l_p ball.
Vector sample_lp_ball(const LpBall& ball, std::mt19937_64& rng);

/// m points uniform in the ball with the first one forced to the center; draws that are
/// not poised under the KKT options are rejected.
InterpolationSet random_poised_set_with_center(std::size_t m, const LpBall& ball, std::mt19937_64& rng,
                                               const KktOptions& options = {});

}  // namespace mfn
