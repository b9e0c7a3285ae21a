#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace mfn {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Order p of an l_p norm, p in [1, inf]. Infinity is a tag, never a large float.
///
/// All exponent arithmetic that involves p goes through the members below so the
/// extended-real conventions (inf/inf = 1, 0^0 = 0) live in one place.
class NormOrder {
 public:
  static NormOrder finite(double p);
  static NormOrder infinity() noexcept { return NormOrder(); }
  /// Accepts "inf", "infinity" or a number >= 1.
  static NormOrder parse(std::string_view text);

  bool is_infinite() const noexcept { return infinite_; }
  /// p itself; +inf for the infinity tag.
  double value() const noexcept;
  /// 1/p, with 1/inf = 0.
  double reciprocal() const noexcept { return infinite_ ? 0.0 : 1.0 / p_; }
  /// (p - shift)/p, with (inf - shift)/inf = 1.
  double shifted_ratio(double shift) const noexcept {
    return infinite_ ? 1.0 : (p_ - shift) / p_;
  }
  std::string to_string() const;

  friend bool operator==(const NormOrder& a, const NormOrder& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.p_ == b.p_);
  }
  /// Ball nesting order: B_p is contained in B_q iff p <= q.
  friend bool operator<(const NormOrder& a, const NormOrder& b) noexcept {
    if (a.infinite_) return false;
    return b.infinite_ || a.p_ < b.p_;
  }

 private:
  NormOrder() = default;
  double p_ = 0.0;
  bool infinite_ = true;
};

/// base^exponent with the convention 0^0 = 0.
double ext_pow(double base, double exponent);

/// ||x||_p.
double lp_norm(const Vector& x, NormOrder p);

/// Quadratic polynomial c + g'(x-b) + 1/2 (x-b)' H (x-b) with symmetric H.
class QuadraticModel {
 public:
  /// Symmetrizes the Hessian as (H + H')/2.
  QuadraticModel(Vector base, double constant, Vector gradient, Matrix hessian);

  static QuadraticModel zero(std::size_t n);
  static QuadraticModel constant(std::size_t n, double c);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(base_.size()); }
  const Vector& base() const noexcept { return base_; }
  double constant_term() const noexcept { return c_; }
  const Vector& gradient() const noexcept { return g_; }
  const Matrix& hessian() const noexcept { return h_; }

  double evaluate(const Vector& x) const;
  double operator()(const Vector& x) const { return evaluate(x); }
  /// Gradient of the polynomial at x, g + H(x - b).
  Vector gradient_at(const Vector& x) const;

  /// The same polynomial expressed around a different base point.
  QuadraticModel rebased(const Vector& new_base) const;
  /// x -> Q(x - shift).
  QuadraticModel translated(const Vector& shift) const;
  QuadraticModel scaled(double factor) const;

  double hessian_frobenius_norm() const { return h_.norm(); }

  friend QuadraticModel operator+(const QuadraticModel& a, const QuadraticModel& b);
  friend QuadraticModel operator-(const QuadraticModel& a, const QuadraticModel& b);

 private:
  Vector base_;
  double c_;
  Vector g_;
  Matrix h_;
};

double evaluate_model(const QuadraticModel& q, const Vector& x);
double hessian_frobenius_norm(const QuadraticModel& q);

/// Largest absolute difference between the coefficients (c, g, H) of two models
/// after expressing b around the base of a.
double max_coefficient_difference(const QuadraticModel& a, const QuadraticModel& b);

/// Ordered points y_1..y_m in R^n; row i of points() is y_{i+1}.
/// The base point is the one subtracted before assembling interpolation systems.
class InterpolationSet {
 public:
  InterpolationSet(Matrix points, std::size_t base_index = 0);
  static InterpolationSet from_points(const std::vector<Vector>& points,
                                      std::size_t base_index = 0);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(points_.cols()); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(points_.rows()); }
  std::size_t base_index() const noexcept { return base_index_; }

  Vector point(std::size_t i) const;
  Vector base_point() const { return point(base_index_); }
  const Matrix& points() const noexcept { return points_; }

  InterpolationSet with_point(std::size_t i, const Vector& x) const;
  InterpolationSet translated(const Vector& shift) const;
  /// Index of a point equal to x (exact comparison), or size() when absent.
  std::size_t find(const Vector& x) const;

 private:
  Matrix points_;
  std::size_t base_index_;
};

/// Closed l_p ball {x : ||x - center||_p <= radius}.
class LpBall {
 public:
  LpBall(Vector center, double radius, NormOrder order);

  const Vector& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  NormOrder order() const noexcept { return order_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(center_.size()); }

  /// ||x - center||_p <= radius * (1 + relative_slack).
  bool contains(const Vector& x, double relative_slack = 0.0) const;

 private:
  Vector center_;
  double radius_;
  NormOrder order_;
};

}  // namespace mfn
