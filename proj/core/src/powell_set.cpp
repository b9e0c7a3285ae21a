#include "mfn/powell_set.hpp"

#include <cmath>
#include <string>

#include "mfn/errors.hpp"

namespace mfn {

void check_powell_range(std::size_t n, std::size_t m) {
  if (n == 0) throw RangeError("dimension n must be >= 1");
  if (m < n + 2 || m > 2 * n + 1) {
    throw RangeError("number of points m = " + std::to_string(m) + " outside the valid interval [" +
                     std::to_string(n + 2) + ", " + std::to_string(2 * n + 1) +
                     "] for n = " + std::to_string(n));
  }
}

InterpolationSet powell_initial_set(std::size_t n, std::size_t m, double delta,
                                    const std::optional<Vector>& x0) {
  check_powell_range(n, m);
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw RangeError("delta must be positive and finite, got " + std::to_string(delta));
  }
  const auto cols = static_cast<Eigen::Index>(n);
  Matrix points = Matrix::Zero(static_cast<Eigen::Index>(m), cols);
  for (std::size_t i = 1; i < m; ++i) {
    if (i <= n) {
      points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = delta;
    } else {
      points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - n - 1)) = -delta;
    }
  }
  if (x0) {
    if (x0->size() != cols) throw DimensionError("x0 has the wrong dimension");
    points.rowwise() += x0->transpose();
  }
  return {std::move(points), 0};
}

}  // namespace mfn
