#include "mfn/types.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "mfn/errors.hpp"

namespace mfn {

namespace {

void require_dimension(std::size_t expected, Eigen::Index actual, const char* what) {
  if (static_cast<Eigen::Index>(expected) != actual) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(expected) +
                         ", got " + std::to_string(actual));
  }
}

}  // namespace

NormOrder NormOrder::finite(double p) {
  if (!std::isfinite(p) || p < 1.0) {
    throw RangeError("norm order must satisfy 1 <= p <= inf, got " + std::to_string(p));
  }
  NormOrder order;
  order.p_ = p;
  order.infinite_ = false;
  return order;
}

NormOrder NormOrder::parse(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "infinity" || text == "oo") {
    return infinity();
  }
  double p = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, p);
  if (ec != std::errc() || ptr != last) {
    throw RangeError("cannot parse norm order '" + std::string(text) + "'");
  }
  return finite(p);
}

double NormOrder::value() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : p_;
}

std::string NormOrder::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), p_);
  return std::string(buf, ptr);
}

double ext_pow(double base, double exponent) {
  if (base == 0.0 && exponent == 0.0) return 0.0;
  return std::pow(base, exponent);
}

double lp_norm(const Vector& x, NormOrder p) {
  if (x.size() == 0) return 0.0;
  if (p.is_infinite()) return x.cwiseAbs().maxCoeff();
  const double order = p.value();
  if (order == 1.0) return x.cwiseAbs().sum();
  if (order == 2.0) return x.norm();
  // Scale by the largest entry so |x_j|^p cannot overflow or underflow.
  const double scale = x.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) sum += std::pow(std::abs(x[j]) / scale, order);
  return scale * std::pow(sum, 1.0 / order);
}

// ---------------------------------------------------------------------------

QuadraticModel::QuadraticModel(Vector base, double constant, Vector gradient, Matrix hessian)
    : base_(std::move(base)), c_(constant), g_(std::move(gradient)) {
  const auto n = static_cast<std::size_t>(base_.size());
  if (n == 0) throw DimensionError("quadratic model needs dimension >= 1");
  require_dimension(n, g_.size(), "model gradient");
  require_dimension(n, hessian.rows(), "model hessian rows");
  require_dimension(n, hessian.cols(), "model hessian cols");
  h_ = 0.5 * (hessian + hessian.transpose());
}

QuadraticModel QuadraticModel::zero(std::size_t n) { return constant(n, 0.0); }

QuadraticModel QuadraticModel::constant(std::size_t n, double c) {
  const auto size = static_cast<Eigen::Index>(n);
  return {Vector::Zero(size), c, Vector::Zero(size), Matrix::Zero(size, size)};
}

double QuadraticModel::evaluate(const Vector& x) const {
  require_dimension(dimension(), x.size(), "evaluation point");
  const Vector s = x - base_;
  return c_ + g_.dot(s) + 0.5 * s.dot(h_ * s);
}

Vector QuadraticModel::gradient_at(const Vector& x) const {
  require_dimension(dimension(), x.size(), "evaluation point");
  return g_ + h_ * (x - base_);
}

QuadraticModel QuadraticModel::rebased(const Vector& new_base) const {
  require_dimension(dimension(), new_base.size(), "new base");
  const Vector d = new_base - base_;
  const Vector hd = h_ * d;
  QuadraticModel out = *this;
  out.base_ = new_base;
  out.c_ = c_ + g_.dot(d) + 0.5 * d.dot(hd);
  out.g_ = g_ + hd;
  return out;
}

QuadraticModel QuadraticModel::translated(const Vector& shift) const {
  require_dimension(dimension(), shift.size(), "translation");
  QuadraticModel out = *this;
  out.base_ = base_ + shift;
  return out;
}

QuadraticModel QuadraticModel::scaled(double factor) const {
  QuadraticModel out = *this;
  out.c_ *= factor;
  out.g_ *= factor;
  out.h_ *= factor;
  return out;
}

QuadraticModel operator+(const QuadraticModel& a, const QuadraticModel& b) {
  require_dimension(a.dimension(), b.base_.size(), "model sum");
  const QuadraticModel r = (b.base_ == a.base_) ? b : b.rebased(a.base_);
  QuadraticModel out = a;
  out.c_ += r.c_;
  out.g_ += r.g_;
  out.h_ += r.h_;
  return out;
}

QuadraticModel operator-(const QuadraticModel& a, const QuadraticModel& b) {
  return a + b.scaled(-1.0);
}

double evaluate_model(const QuadraticModel& q, const Vector& x) { return q.evaluate(x); }

double hessian_frobenius_norm(const QuadraticModel& q) { return q.hessian_frobenius_norm(); }

double max_coefficient_difference(const QuadraticModel& a, const QuadraticModel& b) {
  const QuadraticModel r = (a.base() == b.base()) ? b : b.rebased(a.base());
  double diff = std::abs(a.constant_term() - r.constant_term());
  diff = std::max(diff, (a.gradient() - r.gradient()).cwiseAbs().maxCoeff());
  diff = std::max(diff, (a.hessian() - r.hessian()).cwiseAbs().maxCoeff());
  return diff;
}

// ---------------------------------------------------------------------------

InterpolationSet::InterpolationSet(Matrix points, std::size_t base_index)
    : points_(std::move(points)), base_index_(base_index) {
  if (points_.rows() == 0) throw DimensionError("interpolation set is empty");
  if (points_.cols() == 0) throw DimensionError("interpolation set needs dimension >= 1");
  if (base_index_ >= size()) {
    throw RangeError("base index " + std::to_string(base_index_) + " outside [0, " +
                     std::to_string(size() - 1) + "]");
  }
  if (!points_.allFinite()) throw RangeError("interpolation points must be finite");
}

InterpolationSet InterpolationSet::from_points(const std::vector<Vector>& points,
                                               std::size_t base_index) {
  if (points.empty()) throw DimensionError("interpolation set is empty");
  const auto n = points.front().size();
  Matrix rows(static_cast<Eigen::Index>(points.size()), n);
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_dimension(static_cast<std::size_t>(n), points[i].size(), "interpolation point");
    rows.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
  }
  return {std::move(rows), base_index};
}

Vector InterpolationSet::point(std::size_t i) const {
  if (i >= size()) throw RangeError("point index " + std::to_string(i) + " out of range");
  return points_.row(static_cast<Eigen::Index>(i)).transpose();
}

InterpolationSet InterpolationSet::with_point(std::size_t i, const Vector& x) const {
  if (i >= size()) throw RangeError("point index " + std::to_string(i) + " out of range");
  require_dimension(dimension(), x.size(), "replacement point");
  Matrix rows = points_;
  rows.row(static_cast<Eigen::Index>(i)) = x.transpose();
  return {std::move(rows), base_index_};
}

InterpolationSet InterpolationSet::translated(const Vector& shift) const {
  require_dimension(dimension(), shift.size(), "translation");
  Matrix rows = points_.rowwise() + shift.transpose();
  return {std::move(rows), base_index_};
}

std::size_t InterpolationSet::find(const Vector& x) const {
  require_dimension(dimension(), x.size(), "query point");
  for (std::size_t i = 0; i < size(); ++i) {
    if (points_.row(static_cast<Eigen::Index>(i)).transpose() == x) return i;
  }
  return size();
}

// ---------------------------------------------------------------------------

LpBall::LpBall(Vector center, double radius, NormOrder order)
    : center_(std::move(center)), radius_(radius), order_(order) {
  if (center_.size() == 0) throw DimensionError("ball needs dimension >= 1");
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
    throw RangeError("ball radius must be positive and finite, got " + std::to_string(radius_));
  }
}

bool LpBall::contains(const Vector& x, double relative_slack) const {
  require_dimension(dimension(), x.size(), "ball membership");
  const double limit = radius_ * (1.0 + relative_slack);
  if (order_.is_infinite()) {
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      if (std::abs(x[j] - center_[j]) > limit) return false;
    }
    return true;
  }
  return lp_norm(x - center_, order_) <= limit;
}

}  // namespace mfn
