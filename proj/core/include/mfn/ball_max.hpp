#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "mfn/types.hpp"

namespace mfn {

enum class BallMaxMethod {
  automatic,
  separable,       ///< diagonal Hessian, exact allocation over groups of identical coordinates
  trust_region,    ///< p = 2, eigendecomposition + secular equation
  box_enumeration, ///< p = inf, enumeration of the faces of the box
  multistart,      ///< heuristic: Frank-Wolfe ascent from several starts
};

std::string_view to_string(BallMaxMethod method);

struct BallMaxOptions {
  BallMaxMethod method = BallMaxMethod::automatic;
  /// Number of starts of the heuristic path (center, vertex samples, sphere samples).
  int starts = 32;
  int iterations = 400;
  /// Largest dimension for which p = inf is solved by face enumeration.
  std::size_t max_enumeration_dimension = 12;
  /// Off-diagonal Hessian entries below this (relative) size count as zero.
  double diagonal_tolerance = 1e-11;
  double allocation_tolerance = 1e-10;
  std::uint64_t seed = 0x5eed5eedULL;
  /// Extra starting points for the heuristic path.
  std::vector<Vector> hints;
};

struct BallMaxResult {
  Vector point;
  double value = 0.0;
  /// True only for the exact paths (separable, trust region, box enumeration).
  bool certified = false;
  BallMaxMethod method = BallMaxMethod::automatic;
};

/// Maximizes Q over the ball. value = Q(point) and point lies in the ball up to a
/// relative slack of 1e-12. Among equally good candidates the lexicographically
/// smallest point wins.
BallMaxResult max_quadratic_over_ball(const QuadraticModel& q, const LpBall& ball,
                                      const BallMaxOptions& options = {});

/// max(max Q, max -Q) over the ball; certified only if both halves are.
BallMaxResult max_abs_quadratic_over_ball(const QuadraticModel& q, const LpBall& ball,
                                          const BallMaxOptions& options = {});

/// Trust-region subproblem min G's + s'Bs/2 subject to ||s||_2 <= radius.
struct TrustRegionStep {
  Vector step;
  /// Multiplier mu >= 0 with (B + mu I) s = -G.
  double multiplier = 0.0;
  bool hard_case = false;
  /// Optimality conditions hold to 1e-8 relative.
  bool certified = false;
};
TrustRegionStep solve_trust_region_subproblem(const Vector& gradient, const Matrix& hessian,
                                              double radius);

/// max_{||x||_p <= 1} ||x||_q = max{1, n^{1/q - 1/p}}.
double max_lq_norm_over_lp_ball(std::size_t n, NormOrder p, NormOrder q);

/// The same quantity computed numerically by the separable engine; also returns the maximizer.
struct NormRatioMaximum {
  double value = 0.0;
  Vector point;
};
NormRatioMaximum max_lq_norm_over_lp_ball_numeric(std::size_t n, NormOrder p, NormOrder q);

}  // namespace mfn
