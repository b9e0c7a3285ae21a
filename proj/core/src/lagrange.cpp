#include "mfn/lagrange.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "mfn/errors.hpp"
#include "mfn/powell_set.hpp"

namespace mfn {

std::vector<QuadraticModel> lagrange_polynomials(const KktSystem& system) {
  const auto m = static_cast<Eigen::Index>(system.num_points());
  const Eigen::Index size = system.matrix().rows();
  Matrix rhs = Matrix::Zero(size, m);
  rhs.topRows(m).setIdentity();
  const Matrix solutions = system.solve(rhs);

  std::vector<QuadraticModel> polys;
  polys.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) polys.push_back(system.model_from_solution(solutions.col(i)));

  // Kronecker check L_i(y_j) = delta_ij.
  const Vector& base = system.base();
  const Matrix shifts = system.matrix().block(0, m + 1, m, size - m - 1);
  double residual = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const Vector y = base + shifts.row(j).transpose();
      const double target = (i == j) ? 1.0 : 0.0;
      residual = std::max(residual, std::abs(polys[static_cast<std::size_t>(i)].evaluate(y) - target));
    }
  }
  if (!(residual <= 2.0 * system.options().residual_tolerance)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", residual);
    throw ResidualError(std::string("Lagrange polynomials miss the Kronecker data by ") + buf);
  }
  return polys;
}

std::vector<QuadraticModel> lagrange_polynomials_numeric(const InterpolationSet& set,
                                                         const KktOptions& options) {
  return lagrange_polynomials(KktSystem::assemble(set, options));
}

QuadraticModel powell_lagrange_closed_form(std::size_t n, std::size_t m, double delta,
                                           std::size_t index, const std::optional<Vector>& x0) {
  check_powell_range(n, m);
  if (!(delta > 0.0) || !std::isfinite(delta)) throw RangeError("delta must be positive");
  if (index >= m) {
    throw RangeError("Lagrange index " + std::to_string(index) + " outside [0, " +
                     std::to_string(m - 1) + "]");
  }
  const auto ni = static_cast<Eigen::Index>(n);
  const std::size_t paired = m - n - 1;
  Vector g = Vector::Zero(ni);
  Matrix h = Matrix::Zero(ni, ni);
  double c = 0.0;
  const double d2 = delta * delta;

  if (index == 0) {
    c = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      if (j < paired) {
        h(jj, jj) = -2.0 / d2;
      } else {
        g[jj] = -1.0 / delta;
      }
    }
  } else if (index <= paired) {
    const auto j = static_cast<Eigen::Index>(index - 1);
    h(j, j) = 1.0 / d2;
    g[j] = 0.5 / delta;
  } else if (index <= n) {
    g[static_cast<Eigen::Index>(index - 1)] = 1.0 / delta;
  } else {
    const auto j = static_cast<Eigen::Index>(index - n - 1);
    h(j, j) = 1.0 / d2;
    g[j] = -0.5 / delta;
  }

  Vector base = Vector::Zero(ni);
  if (x0) {
    if (x0->size() != ni) throw DimensionError("x0 has the wrong dimension");
    base = *x0;
  }
  return {base, c, g, h};
}

}  // namespace mfn
