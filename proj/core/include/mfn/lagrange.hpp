#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mfn/interpolation.hpp"
#include "mfn/types.hpp"

namespace mfn {

/// Minimum Frobenius norm Lagrange polynomials L_1..L_m of a poised set: L_i is the
/// MFN interpolant of the Kronecker data delta_{i,.}. One factorization serves all m
/// right-hand sides. Throws NotPoisedError, or ResidualError if some L_i(y_j) misses
/// delta_ij by more than the KKT residual tolerance.
std::vector<QuadraticModel> lagrange_polynomials_numeric(const InterpolationSet& set,
                                                         const KktOptions& options = {});

/// Same, reusing an assembled system.
std::vector<QuadraticModel> lagrange_polynomials(const KktSystem& system);

/// Closed-form Lagrange polynomial of Powell's initial set, index is 0-based (index 0 is y_1).
/// With k = m - n - 1 sign-paired coordinates and u = x - x0:
///   index 0:                 1 - |u_{1..k}|^2 / delta^2 - sum_{j>k} u_j / delta
///   1 <= index <= k:         u_index^2 / (2 delta^2) + u_index / (2 delta)
///   k < index <= n:          u_index / delta
///   n < index < m:           u_{index-n}^2 / (2 delta^2) - u_{index-n} / (2 delta)
/// (coordinates 1-based). The returned model has base x0 (origin by default).
QuadraticModel powell_lagrange_closed_form(std::size_t n, std::size_t m, double delta,
                                           std::size_t index,
                                           const std::optional<Vector>& x0 = std::nullopt);

}  // namespace mfn
