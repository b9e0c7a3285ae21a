#include "mfn/poisedness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mfn/errors.hpp"
#include "mfn/lagrange.hpp"
#include "mfn/powell_set.hpp"

namespace mfn {

std::string_view to_string(PoisednessMethod method) {
  switch (method) {
    case PoisednessMethod::closed_form: return "closed-form";
    case PoisednessMethod::certified_numeric: return "certified-numeric";
    case PoisednessMethod::heuristic_numeric: return "heuristic-numeric";
  }
  return "unknown";
}

std::string_view to_string(ClosedFormSource source) {
  switch (source) {
    case ClosedFormSource::small_order: return "p<=2";
    case ClosedFormSource::full_set: return "m=2n+1";
    case ClosedFormSource::box: return "p=inf";
  }
  return "unknown";
}

PoisednessReport poisedness_constant_numeric(const InterpolationSet& set, const LpBall& ball,
                                             const PoisednessOptions& options) {
  if (set.dimension() != ball.dimension()) {
    throw DimensionError("set and ball dimensions differ");
  }
  const auto polys = lagrange_polynomials_numeric(set, options.kkt);

  BallMaxOptions bm = options.ball_max;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Vector y = set.point(i);
    if (ball.contains(y, 1e-12)) bm.hints.push_back(y);
  }

  PoisednessReport report;
  report.ball = ball;
  report.method = PoisednessMethod::certified_numeric;
  for (const auto& poly : polys) {
    const BallMaxResult r = max_abs_quadratic_over_ball(poly, ball, bm);
    report.per_index.push_back(r.value);
    report.witnesses.push_back(r.point);
    if (!r.certified) report.method = PoisednessMethod::heuristic_numeric;
  }
  report.lambda = *std::max_element(report.per_index.begin(), report.per_index.end());
  const double tie = 1e-10 * (1.0 + report.lambda);
  for (std::size_t i = 0; i < report.per_index.size(); ++i) {
    if (report.per_index[i] >= report.lambda - tie) {
      report.argmax = i;
      break;
    }
  }
  return report;
}

PoisednessReport powell_lambda_numeric(std::size_t n, std::size_t m, NormOrder p, double delta,
                                       const PoisednessOptions& options) {
  const InterpolationSet set = powell_initial_set(n, m, delta);
  const LpBall ball(Vector::Zero(static_cast<Eigen::Index>(n)), delta, p);
  return poisedness_constant_numeric(set, ball, options);
}

ClosedFormLambda lambda_p_closed(std::size_t n, std::size_t m, NormOrder p) {
  check_powell_range(n, m);
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  ClosedFormLambda out;
  std::vector<double> values;

  if (!p.is_infinite() && p.value() <= 2.0) {
    values.push_back(1.0 + ext_pow(2.0 * nd + 1.0 - md, p.shifted_ratio(1.0)));
    out.sources.push_back(ClosedFormSource::small_order);
  }
  if (m == 2 * n + 1) {
    values.push_back(std::max(1.0, ext_pow(nd, p.shifted_ratio(2.0)) - 1.0));
    out.sources.push_back(ClosedFormSource::full_set);
  }
  if (p.is_infinite()) {
    values.push_back(std::max(nd - 1.0, 2.0 * nd - md + 2.0));
    out.sources.push_back(ClosedFormSource::box);
  }
  if (values.empty()) return out;
  for (double v : values) {
    if (std::abs(v - values.front()) > 1e-12 * (1.0 + std::abs(v))) {
      throw std::logic_error("closed forms disagree for n = " + std::to_string(n) +
                             ", m = " + std::to_string(m) + ", p = " + p.to_string());
    }
  }
  out.value = values.front();
  return out;
}

LambdaBounds lambda_p_bounds(std::size_t n, std::size_t m, NormOrder p) {
  check_powell_range(n, m);
  const double nd = static_cast<double>(n);
  LambdaBounds b;
  b.lower = 1.0 + ext_pow(2.0 * nd + 1.0 - static_cast<double>(m), p.shifted_ratio(1.0));
  b.upper = nd;
  if (b.lower > b.upper * (1.0 + 1e-15)) {
    throw std::logic_error("lower bound exceeds upper bound for n = " + std::to_string(n));
  }
  return b;
}

bool default_set_is_optimal(std::size_t n, NormOrder p) {
  if (n <= 2) return true;
  if (p.is_infinite()) return false;
  const double nd = static_cast<double>(n);
  const double limit = 2.0 * std::log(nd) / std::log(nd / 2.0);
  return p.value() <= limit * (1.0 + 1e-12);
}

OptimalityGap optimality_gap(const InterpolationSet& set, const LpBall& ball,
                             const PoisednessOptions& options) {
  if (set.dimension() != ball.dimension()) throw DimensionError("set and ball dimensions differ");
  if (set.find(ball.center()) == set.size()) {
    throw RangeError("the interpolation set does not contain the ball center");
  }
  const std::size_t n = set.dimension();
  OptimalityGap gap;
  gap.report = poisedness_constant_numeric(set, ball, options);
  gap.lambda = gap.report.lambda;
  gap.reference = *lambda_p_closed(n, 2 * n + 1, ball.order()).value;
  gap.theorem_applies = default_set_is_optimal(n, ball.order());
  gap.satisfies_theorem = gap.lambda >= gap.reference - 1e-8;
  return gap;
}

std::vector<SweepRow> sweep_lambda_vs_m(std::size_t n, NormOrder p, double delta, SweepMode mode,
                                        const PoisednessOptions& options) {
  check_powell_range(n, n + 2);
  std::vector<SweepRow> rows;
  for (std::size_t m = n + 2; m <= 2 * n + 1; ++m) {
    SweepRow row;
    row.n = n;
    row.m = m;
    row.p = p;
    row.delta = delta;
    if (mode != SweepMode::numeric) row.closed = lambda_p_closed(n, m, p).value;
    if (mode != SweepMode::closed) {
      const PoisednessReport report = powell_lambda_numeric(n, m, p, delta, options);
      row.numeric = report.lambda;
      row.method = report.method;
      row.witness = report.witnesses[report.argmax];
    }
    if (row.closed && row.numeric) row.abs_diff = std::abs(*row.closed - *row.numeric);
    rows.push_back(std::move(row));
  }
  return rows;
}

Vector sample_lp_ball(const LpBall& ball, std::mt19937_64& rng) {
  const auto n = static_cast<Eigen::Index>(ball.dimension());
  Vector x(n);
  if (ball.order().is_infinite()) {
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    for (Eigen::Index j = 0; j < n; ++j) x[j] = uniform(rng);
    return ball.center() + ball.radius() * x;
  }
  // Generalized Gaussian directions with an exponential radial correction give a
  // uniform draw from the l_p ball.
  const double p = ball.order().value();
  std::gamma_distribution<double> gamma(1.0 / p, 1.0);
  std::exponential_distribution<double> expo(1.0);
  std::bernoulli_distribution sign(0.5);
  double sum = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double g = gamma(rng);
    x[j] = (sign(rng) ? 1.0 : -1.0) * std::pow(g, 1.0 / p);
    sum += g;
  }
  const double z = expo(rng);
  return ball.center() + ball.radius() * x / std::pow(sum + z, 1.0 / p);
}

InterpolationSet random_poised_set_with_center(std::size_t m, const LpBall& ball, std::mt19937_64& rng,
                                               const KktOptions& options) {
  const auto n = static_cast<Eigen::Index>(ball.dimension());
  if (m < ball.dimension() + 2) throw RangeError("need m >= n + 2 points");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Matrix points(static_cast<Eigen::Index>(m), n);
    points.row(0) = ball.center().transpose();
    for (Eigen::Index i = 1; i < static_cast<Eigen::Index>(m); ++i) points.row(i) = sample_lp_ball(ball, rng).transpose();
    InterpolationSet set(std::move(points), 0);
    if (is_poised(set, options).poised) return set;
  }
  throw NotPoisedError("could not draw a poised set in 1000 attempts");
}

}  // namespace mfn
