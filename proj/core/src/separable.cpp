#include "mfn/separable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/tools/minima.hpp>

namespace mfn {

namespace {

double psi(const SeparableTerm& term, double t) {
  return term.linear * t + (term.power_coef == 0.0 ? 0.0 : term.power_coef * std::pow(t, term.exponent));
}

SeparableTerm normalized(SeparableTerm term) {
  if (term.exponent == 1.0) {
    term.linear += term.power_coef;
    term.power_coef = 0.0;
  }
  return term;
}

/// max_{0 <= t <= upper} psi(t), exact: endpoints and the interior stationary point.
std::pair<double, double> single_coordinate_max(const SeparableTerm& term, double upper) {
  double best_t = 0.0;
  double best = 0.0;
  auto consider = [&](double t) {
    const double v = psi(term, t);
    if (v > best) {
      best = v;
      best_t = t;
    }
  };
  consider(upper);
  if (term.power_coef != 0.0 && term.exponent > 1.0 && term.linear != 0.0 &&
      (term.linear > 0.0) != (term.power_coef > 0.0)) {
    const double t = std::pow(term.linear / (-term.power_coef * term.exponent), 1.0 / (term.exponent - 1.0));
    if (t > 0.0 && t < upper) consider(t);
  }
  return {best, best_t};
}

enum class GroupKind { inactive, monomial, concave, single };

struct Group {
  SeparableTerm term;
  std::vector<Eigen::Index> members;
  GroupKind kind = GroupKind::inactive;
};

/// Value and (support size, magnitude) of the best use of group radius R.
struct GroupChoice {
  double value = 0.0;
  std::size_t support = 0;
  double magnitude = 0.0;
};

GroupChoice group_max(const Group& group, double radius, double p) {
  const std::size_t k = group.members.size();
  GroupChoice best;
  if (radius <= 0.0) return best;
  switch (group.kind) {
    case GroupKind::inactive:
      return best;
    case GroupKind::monomial:
      for (std::size_t support = 1; support <= k; ++support) {
        const double t = radius * std::pow(static_cast<double>(support), -1.0 / p);
        const double v = static_cast<double>(support) * psi(group.term, t);
        if (v > best.value) best = {v, support, t};
      }
      return best;
    case GroupKind::concave: {
      const double cap = radius * std::pow(static_cast<double>(k), -1.0 / p);
      const auto [v, t] = single_coordinate_max(group.term, cap);
      if (v > 0.0) best = {static_cast<double>(k) * v, k, t};
      return best;
    }
    case GroupKind::single: {
      const auto [v, t] = single_coordinate_max(group.term, radius);
      if (v > 0.0) best = {v, 1, t};
      return best;
    }
  }
  return best;
}

void write_group(const Group& group, const GroupChoice& choice, Vector& magnitudes) {
  for (std::size_t i = 0; i < choice.support; ++i) magnitudes[group.members[i]] = choice.magnitude;
}

}  // namespace

std::optional<SeparableMaximum> maximize_separable(std::span<const SeparableTerm> terms,
                                                   double radius, NormOrder p,
                                                   const SeparableOptions& options) {
  const auto n = static_cast<Eigen::Index>(terms.size());
  SeparableMaximum result;
  result.magnitudes = Vector::Zero(n);

  if (p.is_infinite()) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto [v, t] = single_coordinate_max(normalized(terms[static_cast<std::size_t>(j)]), radius);
      result.value += v;
      result.magnitudes[j] = t;
    }
    return result;
  }

  double scale = 0.0;
  for (const auto& raw : terms) {
    const SeparableTerm t = normalized(raw);
    scale = std::max({scale, std::abs(t.linear) * radius,
                      std::abs(t.power_coef) * std::pow(radius, t.exponent)});
  }
  const double tol = options.grouping_tolerance * std::max(scale, std::numeric_limits<double>::min());
  const double rtol = options.grouping_tolerance * (scale > 0.0 ? scale / radius : 1.0);

  std::vector<Group> groups;
  for (Eigen::Index j = 0; j < n; ++j) {
    const SeparableTerm t = normalized(terms[static_cast<std::size_t>(j)]);
    const bool inert = (t.linear <= 0.0 && t.power_coef <= 0.0) ||
                       (std::abs(t.linear) * radius <= tol && std::abs(t.power_coef) * std::pow(radius, t.exponent) <= tol);
    if (inert) continue;
    auto same = [&](const Group& g) {
      return g.term.exponent == t.exponent && std::abs(g.term.linear - t.linear) <= rtol &&
             std::abs(g.term.power_coef - t.power_coef) * std::pow(radius, t.exponent) <= tol;
    };
    auto it = std::find_if(groups.begin(), groups.end(), same);
    if (it == groups.end()) {
      groups.push_back({t, {j}, GroupKind::inactive});
    } else {
      it->members.push_back(j);
    }
  }

  for (auto& g : groups) {
    const double lin = g.term.linear;
    const double pow_coef = g.term.power_coef;
    const bool monomial = (lin == 0.0 && pow_coef > 0.0) || (pow_coef == 0.0 && lin > 0.0);
    const bool concave = lin >= 0.0 && pow_coef <= 0.0 && g.term.exponent >= 1.0;
    if (monomial) {
      g.kind = GroupKind::monomial;
    } else if (concave) {
      g.kind = GroupKind::concave;
    } else if (g.members.size() == 1) {
      g.kind = GroupKind::single;
    } else {
      return std::nullopt;
    }
  }
  if (groups.size() > 2) return std::nullopt;

  const double order = p.value();
  if (groups.empty()) return result;
  if (groups.size() == 1) {
    const GroupChoice choice = group_max(groups[0], radius, order);
    result.value = choice.value;
    write_group(groups[0], choice, result.magnitudes);
    return result;
  }

  // Split the budget: R_a = radius u^{1/p}, R_b = radius (1-u)^{1/p}, u in [0, 1].
  auto split_value = [&](double u) {
    u = std::clamp(u, 0.0, 1.0);
    return group_max(groups[0], radius * std::pow(u, 1.0 / order), order).value +
           group_max(groups[1], radius * std::pow(1.0 - u, 1.0 / order), order).value;
  };
  const int grid = std::max(options.allocation_grid, 8);
  std::vector<double> values(static_cast<std::size_t>(grid) + 1);
  for (int k = 0; k <= grid; ++k) values[static_cast<std::size_t>(k)] = split_value(static_cast<double>(k) / grid);

  double best_u = 0.0;
  double best = values[0];
  for (int k = 0; k <= grid; ++k) {
    if (values[static_cast<std::size_t>(k)] > best) {
      best = values[static_cast<std::size_t>(k)];
      best_u = static_cast<double>(k) / grid;
    }
  }
  // Refine around the most promising grid-local maxima.
  std::vector<int> peaks;
  for (int k = 0; k <= grid; ++k) {
    const double v = values[static_cast<std::size_t>(k)];
    const bool left_ok = k == 0 || v >= values[static_cast<std::size_t>(k - 1)];
    const bool right_ok = k == grid || v >= values[static_cast<std::size_t>(k + 1)];
    if (left_ok && right_ok) peaks.push_back(k);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](int a, int b) {
    return values[static_cast<std::size_t>(a)] > values[static_cast<std::size_t>(b)];
  });
  if (peaks.size() > 8) peaks.resize(8);
  const int bits = std::clamp(static_cast<int>(-std::log2(options.allocation_tolerance)), 10, 26);
  for (const int k : peaks) {
    const double lo = static_cast<double>(std::max(k - 1, 0)) / grid;
    const double hi = static_cast<double>(std::min(k + 1, grid)) / grid;
    std::uintmax_t iterations = 200;
    const auto [u, neg] = boost::math::tools::brent_find_minima(
        [&](double x) { return -split_value(x); }, lo, hi, bits, iterations);
    if (-neg > best) {
      best = -neg;
      best_u = u;
    }
  }

  const GroupChoice a = group_max(groups[0], radius * std::pow(best_u, 1.0 / order), order);
  const GroupChoice b = group_max(groups[1], radius * std::pow(1.0 - best_u, 1.0 / order), order);
  result.value = a.value + b.value;
  write_group(groups[0], a, result.magnitudes);
  write_group(groups[1], b, result.magnitudes);
  return result;
}

}  // namespace mfn
