#pragma once

#include <optional>
#include <span>

#include "mfn/types.hpp"

namespace mfn {

/// One coordinate of a separable objective on magnitudes t >= 0:
///   psi(t) = linear * t + power_coef * t^exponent.
/// A quadratic coordinate g x + h x^2 / 2 folds into {|g|, h/2, 2} with sign(x) = sign(g).
struct SeparableTerm {
  double linear = 0.0;
  double power_coef = 0.0;
  double exponent = 2.0;
};

struct SeparableMaximum {
  double value = 0.0;
  /// Optimal magnitudes t_j >= 0.
  Vector magnitudes;
};

struct SeparableOptions {
  /// Terms whose coefficients agree to this relative tolerance form one group.
  double grouping_tolerance = 1e-9;
  /// Final accuracy of the radius split between two groups.
  double allocation_tolerance = 1e-10;
  /// Grid resolution used to bracket the radius split before refinement.
  int allocation_grid = 2048;
};

/// Maximizes sum_j psi_j(t_j) subject to ||t||_p <= radius, t >= 0.
///
/// For p = inf the coordinates decouple and the maximum is exact. For finite p,
/// identical terms are grouped; the maximum of a group of k identical terms with
/// group radius R is
///   - k' psi(R k'^{-1/p}) maximized over support sizes k' = 1..k for positive monomials,
///   - k max_{t <= R k^{-1/p}} psi(t) for concave psi,
///   - max_{t <= R} psi(t) for a single coordinate,
/// and the radius split between at most two active groups is a one-dimensional
/// problem solved by a grid scan plus Brent refinement.
/// Returns nullopt when the terms do not fit this structure (three or more active
/// groups, or a group of several identical convex mixed terms).
std::optional<SeparableMaximum> maximize_separable(std::span<const SeparableTerm> terms,
                                                   double radius, NormOrder p,
                                                   const SeparableOptions& options = {});

}  // namespace mfn
