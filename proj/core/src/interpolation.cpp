#include "mfn/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mfn/errors.hpp"

namespace mfn {
namespace {

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

KktSystem KktSystem::assemble(const InterpolationSet& set, const KktOptions& options) {
  const std::size_t n = set.dimension();
  const std::size_t m = set.size();
  if (m < n + 2) {
    throw DimensionError("minimum Frobenius norm interpolation needs m >= n + 2 = " +
                         std::to_string(n + 2) + " points, got " + std::to_string(m));
  }
  KktSystem sys;
  sys.m_ = m;
  sys.n_ = n;
  sys.options_ = options;
  sys.base_ = set.base_point();
  sys.shifts_ = set.points().rowwise() - sys.base_.transpose();

  const auto mi = static_cast<Eigen::Index>(m);
  const auto ni = static_cast<Eigen::Index>(n);
  const Eigen::Index size = mi + ni + 1;

  const Matrix gram = sys.shifts_ * sys.shifts_.transpose();
  sys.w_ = Matrix::Zero(size, size);
  sys.w_.topLeftCorner(mi, mi) = 0.5 * gram.array().square().matrix();
  sys.w_.block(0, mi, mi, 1).setOnes();
  sys.w_.block(0, mi + 1, mi, ni) = sys.shifts_;
  sys.w_.block(mi, 0, 1, mi).setOnes();
  sys.w_.block(mi + 1, 0, ni, mi) = sys.shifts_.transpose();

  double r = sys.shifts_.rowwise().norm().maxCoeff();
  if (!(r > 0.0)) r = 1.0;
  sys.scale_ = r;
  sys.equilibration_.resize(size);
  sys.equilibration_.head(mi).setConstant(1.0 / (r * r));
  sys.equilibration_[mi] = r * r;
  sys.equilibration_.tail(ni).setConstant(r);

  const Matrix scaled = sys.equilibration_.asDiagonal() * sys.w_ * sys.equilibration_.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(scaled);
  if (eig.info() != Eigen::Success) {
    sys.condition_ = std::numeric_limits<double>::infinity();
    return sys;
  }
  sys.eigenvalues_ = eig.eigenvalues();
  sys.eigenvectors_ = eig.eigenvectors();
  const double largest = sys.eigenvalues_.cwiseAbs().maxCoeff();
  const double smallest = sys.eigenvalues_.cwiseAbs().minCoeff();
  sys.condition_ = (smallest > 0.0) ? largest / smallest : std::numeric_limits<double>::infinity();
  return sys;
}

Vector KktSystem::solve(const Vector& rhs) const {
  Matrix block = rhs;
  return solve(block).col(0);
}

Matrix KktSystem::solve(const Matrix& rhs) const {
  if (!nonsingular()) {
    throw NotPoisedError("interpolation set is not poised (KKT condition estimate " +
                         format_number(condition_) + " exceeds " +
                         format_number(options_.max_condition) + ")");
  }
  if (rhs.rows() != w_.rows()) throw DimensionError("KKT right-hand side has the wrong size");
  auto apply_inverse = [&](const Matrix& b) -> Matrix {
    const Matrix coeffs =
        eigenvalues_.cwiseInverse().asDiagonal() * (eigenvectors_.transpose() * (equilibration_.asDiagonal() * b));
    return equilibration_.asDiagonal() * (eigenvectors_ * coeffs);
  };
  // Two rounds of iterative refinement recover most of what the eigensolver loses on
  // badly conditioned sets.
  Matrix x = apply_inverse(rhs);
  for (int round = 0; round < 2; ++round) x += apply_inverse(rhs - w_ * x);
  return x;
}

QuadraticModel KktSystem::model_from_solution(const Vector& solution) const {
  const auto mi = static_cast<Eigen::Index>(m_);
  const auto ni = static_cast<Eigen::Index>(n_);
  if (solution.size() != mi + ni + 1) throw DimensionError("KKT solution has the wrong size");
  const Vector lambda = solution.head(mi);
  const Matrix hessian = shifts_.transpose() * lambda.asDiagonal() * shifts_;
  return {base_, solution[mi], solution.tail(ni), hessian};
}

QuadraticModel KktSystem::interpolate(std::span<const double> values) const {
  if (values.size() != m_) {
    throw DimensionError("expected " + std::to_string(m_) + " function values, got " +
                         std::to_string(values.size()));
  }
  Vector rhs = Vector::Zero(w_.rows());
  double largest = 0.0;
  for (std::size_t i = 0; i < m_; ++i) {
    rhs[static_cast<Eigen::Index>(i)] = values[i];
    largest = std::max(largest, std::abs(values[i]));
  }
  const QuadraticModel model = model_from_solution(solve(rhs));

  double residual = 0.0;
  for (std::size_t i = 0; i < m_; ++i) {
    const Vector y = base_ + shifts_.row(static_cast<Eigen::Index>(i)).transpose();
    residual = std::max(residual, std::abs(model.evaluate(y) - values[i]));
  }
  if (!(residual <= options_.residual_tolerance * (1.0 + largest))) {
    throw ResidualError("interpolation residual " + format_number(residual) +
                        " exceeds tolerance (condition estimate " + format_number(condition_) + ")");
  }
  return model;
}

KktSystem assemble_kkt(const InterpolationSet& set, const KktOptions& options) {
  return KktSystem::assemble(set, options);
}

PoisednessCheck is_poised(const InterpolationSet& set, const KktOptions& options) {
  if (set.size() < set.dimension() + 2) return {};
  const KktSystem sys = KktSystem::assemble(set, options);
  if (!sys.nonsingular()) return {};
  return {true, sys.condition_estimate()};
}

QuadraticModel interpolate_mfn(const InterpolationSet& set, std::span<const double> values,
                               const KktOptions& options) {
  if (values.size() != set.size()) {
    throw DimensionError("expected " + std::to_string(set.size()) + " function values, got " +
                         std::to_string(values.size()));
  }
  return KktSystem::assemble(set, options).interpolate(values);
}

QuadraticModel interpolate_sym_broyden(const InterpolationSet& set,
                                       std::span<const double> values,
                                       const QuadraticModel& previous,
                                       const KktOptions& options) {
  if (previous.dimension() != set.dimension()) {
    throw DimensionError("previous model has dimension " + std::to_string(previous.dimension()) +
                         ", set has " + std::to_string(set.dimension()));
  }
  if (values.size() != set.size()) {
    throw DimensionError("expected " + std::to_string(set.size()) + " function values, got " +
                         std::to_string(values.size()));
  }
  std::vector<double> residual(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) residual[i] = values[i] - previous.evaluate(set.point(i));
  const KktSystem sys = KktSystem::assemble(set, options);
  const QuadraticModel correction = sys.interpolate(residual);
  const QuadraticModel prev = previous.base() == sys.base() ? previous : previous.rebased(sys.base());
  return prev + correction;
}

}  // namespace mfn
