#include <cmath>
#include <random>

#include <doctest.h>

#include "mfn/errors.hpp"
#include "mfn/interpolation.hpp"
#include "mfn/lagrange.hpp"
#include "mfn/powell_set.hpp"
#include "oracles.hpp"

using namespace mfn;

namespace {

QuadraticModel poly(int n, double c, std::initializer_list<double> g, std::initializer_list<double> diag) {
  Vector gv(n), dv(n);
  int k = 0;
  for (double v : g) gv(k++) = v;
  k = 0;
  for (double v : diag) dv(k++) = v;
  return QuadraticModel(Vector::Zero(n), c, gv, dv.asDiagonal());
}

}  // namespace

TEST_CASE("closed forms of the planar set") {
  // L2 = x1^2/2 + x1/2, L5 = x2^2/2 - x2/2
  CHECK(max_coefficient_difference(powell_lagrange_closed_form(2, 5, 1.0, 1), poly(2, 0, {0.5, 0}, {1, 0})) == 0.0);
  CHECK(max_coefficient_difference(powell_lagrange_closed_form(2, 5, 1.0, 4), poly(2, 0, {0, -0.5}, {0, 1})) == 0.0);
  // L1 = 1 - x1^2 - x2^2
  CHECK(max_coefficient_difference(powell_lagrange_closed_form(2, 5, 1.0, 0), poly(2, 1, {0, 0}, {-2, -2})) == 0.0);
}

TEST_CASE("closed forms of a truncated set") {
  // n = 3, m = 6: L1 = 1 - x1^2 - x2^2 - x3, L4 = x3
  CHECK(max_coefficient_difference(powell_lagrange_closed_form(3, 6, 1.0, 0), poly(3, 1, {0, 0, -1}, {-2, -2, 0})) ==
        0.0);
  CHECK(max_coefficient_difference(powell_lagrange_closed_form(3, 6, 1.0, 3), poly(3, 0, {0, 0, 1}, {0, 0, 0})) ==
        0.0);
  CHECK_THROWS_AS(powell_lagrange_closed_form(3, 6, 1.0, 6), RangeError);
  CHECK_THROWS_AS(powell_lagrange_closed_form(3, 8, 1.0, 0), RangeError);
}

TEST_CASE("numeric polynomials of the planar set") {
  const auto polys = lagrange_polynomials_numeric(powell_initial_set(2, 5, 1.0));
  REQUIRE(polys.size() == 5);
  CHECK(max_coefficient_difference(polys[0], poly(2, 1, {0, 0}, {-2, -2})) < 1e-12);
  const auto truncated = lagrange_polynomials_numeric(powell_initial_set(3, 6, 1.0));
  CHECK(max_coefficient_difference(truncated[3], poly(3, 0, {0, 0, 1}, {0, 0, 0})) < 1e-12);
}

TEST_CASE("closed forms agree with the numeric polynomials") {
  double worst = 0.0;
  for (std::size_t n = 1; n <= 8; ++n)
    for (std::size_t m = n + 2; m <= 2 * n + 1; ++m)
      for (double delta : {0.5, 1.0, 3.0}) {
        const auto numeric = lagrange_polynomials_numeric(powell_initial_set(n, m, delta));
        for (std::size_t i = 0; i < m; ++i)
          worst = std::max(worst, max_coefficient_difference(numeric[i], powell_lagrange_closed_form(n, m, delta, i)));
      }
  CHECK(worst <= 1e-8);
}

TEST_CASE("closed forms at a shifted start") {
  Vector x0(3);
  x0 << 1.5, -2, 0.25;
  const InterpolationSet set = powell_initial_set(3, 5, 0.5, x0);
  const auto numeric = lagrange_polynomials_numeric(set);
  for (std::size_t i = 0; i < 5; ++i) {
    const QuadraticModel closed = powell_lagrange_closed_form(3, 5, 0.5, i, x0);
    CHECK(closed.base() == x0);
    CHECK(max_coefficient_difference(numeric[i], closed) < 1e-8);
  }
}

TEST_CASE("kronecker property, partition of unity and hessian structure") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t m = n + 2; m <= 2 * n + 1; ++m) {
      const InterpolationSet set = powell_initial_set(n, m, 2.0);
      const auto numeric = lagrange_polynomials_numeric(set);
      QuadraticModel sum = QuadraticModel::zero(n);
      for (std::size_t i = 0; i < m; ++i) {
        const QuadraticModel closed = powell_lagrange_closed_form(n, m, 2.0, i);
        sum = sum + numeric[i];
        for (std::size_t j = 0; j < m; ++j) {
          const double delta = i == j ? 1.0 : 0.0;
          CHECK(std::abs(numeric[i](set.point(j)) - delta) <= 1e-10);
          CHECK(std::abs(closed(set.point(j)) - delta) <= 1e-10);
        }
        const Matrix& h = closed.hessian();
        for (Eigen::Index r = 0; r < h.rows(); ++r)
          for (Eigen::Index c = 0; c < h.cols(); ++c)
            if (r != c || r >= static_cast<Eigen::Index>(m - n - 1)) CHECK(h(r, c) == 0.0);
      }
      CHECK(max_coefficient_difference(sum, QuadraticModel::constant(n, 1.0)) < 1e-10);
    }
  }
}

TEST_CASE("reconstruction identity on random sets") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = trial % 2 ? 2 : 5;
    const int m = n + 2 + trial % n;
    InterpolationSet set = InterpolationSet::from_points(oracle::random_points(rng, n, m));
    while (!is_poised(set).poised) set = InterpolationSet::from_points(oracle::random_points(rng, n, m));
    const auto polys = lagrange_polynomials_numeric(set);
    const Vector f = oracle::uniform_point(rng, m);
    QuadraticModel combo = QuadraticModel::zero(static_cast<std::size_t>(n)).rebased(set.base_point());
    for (int i = 0; i < m; ++i)
      combo = combo + QuadraticModel(polys[i].base(), f(i) * polys[i].constant_term(), f(i) * polys[i].gradient(),
                                     f(i) * polys[i].hessian());
    const QuadraticModel q = interpolate_mfn(set, std::vector<double>(f.data(), f.data() + m));
    CHECK(max_coefficient_difference(q, combo) <= 1e-8);
  }
}

TEST_CASE("unpoised set") {
  Matrix dup(4, 2);
  dup << 0, 0, 1, 0, 1, 0, 0, 1;
  CHECK_THROWS_AS(lagrange_polynomials_numeric(InterpolationSet(dup)), NotPoisedError);
}
