#pragma once

#include <cstddef>
#include <limits>
#include <span>

#include "mfn/types.hpp"

namespace mfn {

struct KktOptions {
  /// Sets whose equilibrated KKT matrix has a larger 2-norm condition number are not poised.
  double max_condition = 1e12;
  /// Post-solve check: max_i |Q(y_i) - f_i| <= residual_tolerance * (1 + max_i |f_i|).
  double residual_tolerance = 1e-10;
};

/// Saddle-point system of the minimum Frobenius norm interpolation problem,
///
///   [ A   X ] [lambda]   [f]        A_ij = 1/2 ((y_i - b)'(y_j - b))^2
///   [ X'  0 ] [ c, g ] = [0],       row i of X = (1, (y_i - b)'),
///
/// with b the base point of the set. The Hessian of the interpolant is
/// sum_i lambda_i (y_i - b)(y_i - b)'.
///
/// The matrix is factorized after the symmetric diagonal equilibration
/// D W D, D = diag(r^-2 I_m, r^2, r I_n), r = max_i ||y_i - b||, which is the
/// same system written for the points scaled to unit size. The condition number
/// reported is that of the equilibrated matrix, so it does not depend on units.
class KktSystem {
 public:
  static KktSystem assemble(const InterpolationSet& set, const KktOptions& options = {});

  const Matrix& matrix() const noexcept { return w_; }
  const Vector& base() const noexcept { return base_; }
  std::size_t num_points() const noexcept { return m_; }
  std::size_t dimension() const noexcept { return n_; }
  double scale() const noexcept { return scale_; }
  const KktOptions& options() const noexcept { return options_; }

  /// 2-norm condition number of the equilibrated matrix; +inf when exactly singular.
  double condition_estimate() const noexcept { return condition_; }
  bool nonsingular() const noexcept { return condition_ <= options_.max_condition; }

  /// Solves W z = rhs. Throws NotPoisedError when the system is declared singular.
  Vector solve(const Vector& rhs) const;
  Matrix solve(const Matrix& rhs) const;

  /// Builds the interpolant from a solution vector (lambda, c, g).
  QuadraticModel model_from_solution(const Vector& solution) const;

  /// Minimum Frobenius norm interpolant of the values, with the residual post-check.
  QuadraticModel interpolate(std::span<const double> values) const;

 private:
  KktSystem() = default;

  std::size_t m_ = 0;
  std::size_t n_ = 0;
  Vector base_;
  Matrix shifts_;  // row i = y_i - b
  Matrix w_;
  Vector equilibration_;
  Matrix eigenvectors_;
  Vector eigenvalues_;
  double scale_ = 1.0;
  double condition_ = std::numeric_limits<double>::infinity();
  KktOptions options_;
};

/// Assembles the KKT system; throws DimensionError when m < n + 2.
KktSystem assemble_kkt(const InterpolationSet& set, const KktOptions& options = {});

struct PoisednessCheck {
  bool poised = false;
  /// Condition estimate of the equilibrated KKT matrix; +inf unless poised.
  double condition = std::numeric_limits<double>::infinity();
};

/// Never throws on degenerate input; such sets report poised = false.
PoisednessCheck is_poised(const InterpolationSet& set, const KktOptions& options = {});

/// Quadratic with least ||Hessian||_F that takes the given values on the set.
QuadraticModel interpolate_mfn(const InterpolationSet& set, std::span<const double> values,
                               const KktOptions& options = {});

/// Least-change (derivative-free symmetric Broyden) update: the interpolant Q with
/// least ||Hessian(Q) - Hessian(previous)||_F, i.e. previous + MFN(values - previous(y_i)).
QuadraticModel interpolate_sym_broyden(const InterpolationSet& set,
                                       std::span<const double> values,
                                       const QuadraticModel& previous,
                                       const KktOptions& options = {});

}  // namespace mfn
