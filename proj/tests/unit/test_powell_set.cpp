#include <doctest.h>

#include "mfn/errors.hpp"
#include "mfn/interpolation.hpp"
#include "mfn/powell_set.hpp"

using namespace mfn;

TEST_CASE("two-dimensional full set") {
  const InterpolationSet set = powell_initial_set(2, 5, 1.0);
  Matrix expected(5, 2);
  expected << 0, 0, 1, 0, 0, 1, -1, 0, 0, -1;
  CHECK(set.points() == expected);
  CHECK(set.base_index() == 0);
}

TEST_CASE("truncated set") {
  const InterpolationSet set = powell_initial_set(3, 5, 0.5);
  Matrix expected(5, 3);
  expected << 0, 0, 0, 0.5, 0, 0, 0, 0.5, 0, 0, 0, 0.5, -0.5, 0, 0;
  CHECK(set.points() == expected);
}

TEST_CASE("point count outside the valid range") {
  CHECK_THROWS_AS(powell_initial_set(2, 3, 1.0), RangeError);
  CHECK_THROWS_AS(powell_initial_set(2, 6, 1.0), RangeError);
  CHECK_THROWS_AS(powell_initial_set(0, 2, 1.0), RangeError);
  CHECK_THROWS_AS(powell_initial_set(2, 5, 0.0), RangeError);
  CHECK_THROWS_AS(powell_initial_set(2, 5, 1.0, Vector::Zero(3)), DimensionError);
  try {
    powell_initial_set(2, 3, 1.0);
  } catch (const RangeError& e) {
    CHECK(std::string(e.what()).find("[4, 5]") != std::string::npos);
  }
  CHECK(default_point_count(7) == 15);
}

TEST_CASE("structure over the whole range") {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::size_t m = n + 2; m <= 2 * n + 1; ++m) {
      const double delta = 0.75;
      Vector x0 = Vector::LinSpaced(static_cast<Eigen::Index>(n), -2.0, 2.0 + n);
      x0 = x0.array().round();
      const InterpolationSet set = powell_initial_set(n, m, delta, x0);
      CAPTURE(n);
      CAPTURE(m);
      REQUIRE(set.size() == m);
      CHECK(set.point(0) == x0);
      std::size_t both_signs = 0;
      for (std::size_t j = 0; j < n; ++j) {
        bool plus = false, minus = false;
        for (std::size_t i = 1; i < m; ++i) {
          const Vector d = set.point(i) - x0;
          if (d(static_cast<Eigen::Index>(j)) == delta) plus = true;
          if (d(static_cast<Eigen::Index>(j)) == -delta) minus = true;
        }
        CHECK(plus);
        if (minus) ++both_signs;
      }
      CHECK(both_signs == m - n - 1);
      for (std::size_t i = 1; i < m; ++i) {
        const Vector d = set.point(i) - x0;
        CHECK(d.cwiseAbs().maxCoeff() == delta);
        CHECK(d.cwiseAbs().sum() == delta);
      }
      CHECK(is_poised(set).poised);
    }
  }
}
