#pragma once

#include <cstddef>
#include <optional>

#include "mfn/types.hpp"

namespace mfn {

/// Powell's initial interpolation set around x0:
///   y_1 = x0, y_{i} = x0 + delta e_{i-1} (2 <= i <= n+1), y_{i} = x0 - delta e_{i-n-1} (i >= n+2),
/// truncated to the first m points. Requires n + 2 <= m <= 2n + 1; the base is y_1.
InterpolationSet powell_initial_set(std::size_t n, std::size_t m, double delta,
                                    const std::optional<Vector>& x0 = std::nullopt);

/// Powell's default number of points, 2n + 1.
constexpr std::size_t default_point_count(std::size_t n) noexcept { return 2 * n + 1; }

/// Throws RangeError unless n >= 1 and n + 2 <= m <= 2n + 1.
void check_powell_range(std::size_t n, std::size_t m);

}  // namespace mfn
