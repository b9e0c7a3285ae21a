#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfn/types.hpp"

namespace mfn {

using Objective = std::function<double(const Vector&)>;

struct TestFunction {
  std::string name;
  std::size_t dimension = 0;
  Objective objective;
  /// Absent for functions that are unbounded below (linear).
  std::optional<Vector> minimizer;
  std::optional<double> minimum;
  /// The generating polynomial of the seeded quadratic.
  std::optional<QuadraticModel> quadratic;
};

/// Names accepted by get_function.
std::vector<std::string_view> test_function_names();

/// sphere:               ||x||^2
/// quadratic-crossterms: c + g'x + x'Hx/2 with H = A'A + I, A, g, c uniform(-1, 1) from the seed
/// rosenbrock:           sum_j 100 (x_{j+1} - x_j^2)^2 + (1 - x_j)^2, n >= 2
/// linear:               1 + sum_j x_j
/// Throws RangeError for unknown names or invalid n.
TestFunction get_function(std::string_view name, std::size_t n, std::uint64_t seed = 7);

}  // namespace mfn
