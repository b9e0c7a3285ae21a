#include "mfn/ball_max.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>

#include "mfn/errors.hpp"
#include "mfn/separable.hpp"

namespace mfn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    if (a[j] < b[j]) return true;
    if (a[j] > b[j]) return false;
  }
  return false;
}

/// Keeps the best candidate; near-ties go to the lexicographically smallest point.
class Incumbent {
 public:
  void offer(double value, const Vector& point) {
    if (!std::isfinite(value)) return;
    if (point_.size() == 0) {
      value_ = value;
      point_ = point;
      return;
    }
    const double tie = 1e-13 * (1.0 + std::abs(value_));
    if (value > value_ + tie || (value >= value_ - tie && lex_less(point, point_))) {
      value_ = value;
      point_ = point;
    }
  }
  bool empty() const { return point_.size() == 0; }
  double value() const { return value_; }
  const Vector& point() const { return point_; }

 private:
  double value_ = -kInf;
  Vector point_;
};

void require_same_dimension(const QuadraticModel& q, const LpBall& ball) {
  if (q.dimension() != ball.dimension()) {
    throw DimensionError("model dimension " + std::to_string(q.dimension()) +
                         " does not match ball dimension " + std::to_string(ball.dimension()));
  }
}

BallMaxResult finish(const QuadraticModel& q, Vector point, bool certified, BallMaxMethod method) {
  BallMaxResult r;
  r.value = q.evaluate(point);
  r.point = std::move(point);
  r.certified = certified;
  r.method = method;
  return r;
}

// ---------------------------------------------------------------------------
// Separable path.

struct DiagonalView {
  bool diagonal = false;
  Vector gradient;
  Vector curvature;
};

DiagonalView diagonal_view(const QuadraticModel& centered, double radius, double tolerance) {
  DiagonalView view;
  const Vector& g = centered.gradient();
  const Matrix& h = centered.hessian();
  const double scale = std::max({g.cwiseAbs().maxCoeff() * radius, h.cwiseAbs().maxCoeff() * radius * radius,
                                 std::numeric_limits<double>::min()});
  const double cut = tolerance * scale;
  const auto n = g.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && std::abs(h(i, j)) * radius * radius > cut) return view;
    }
  }
  view.diagonal = true;
  view.gradient = g;
  view.curvature = h.diagonal();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::abs(view.gradient[j]) * radius <= cut) view.gradient[j] = 0.0;
    if (std::abs(view.curvature[j]) * radius * radius <= cut) view.curvature[j] = 0.0;
  }
  return view;
}

std::optional<BallMaxResult> separable_path(const QuadraticModel& q, const LpBall& ball,
                                            const BallMaxOptions& options) {
  const QuadraticModel centered = q.rebased(ball.center());
  const DiagonalView view = diagonal_view(centered, ball.radius(), options.diagonal_tolerance);
  if (!view.diagonal) return std::nullopt;
  const auto n = view.gradient.size();
  std::vector<SeparableTerm> terms(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    terms[static_cast<std::size_t>(j)] = {std::abs(view.gradient[j]), 0.5 * view.curvature[j], 2.0};
  }
  SeparableOptions sep;
  sep.allocation_tolerance = options.allocation_tolerance;
  const auto best = maximize_separable(terms, ball.radius(), ball.order(), sep);
  if (!best) return std::nullopt;
  Vector x = ball.center();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double sign = view.gradient[j] > 0.0 ? 1.0 : -1.0;
    x[j] += sign * best->magnitudes[j];
  }
  return finish(q, std::move(x), true, BallMaxMethod::separable);
}

// ---------------------------------------------------------------------------
// Box enumeration for p = inf.

BallMaxResult box_enumeration(const QuadraticModel& q, const LpBall& ball) {
  const QuadraticModel centered = q.rebased(ball.center());
  const double r = ball.radius();
  const Vector g = centered.gradient() * r;
  const Matrix h = centered.hessian() * (r * r);
  const auto n = static_cast<int>(g.size());
  const std::uint32_t masks = 1u << n;

  // negdef[mask]: -H restricted to the free coordinates in mask is positive definite.
  std::vector<char> negdef(masks, 0);
  negdef[0] = 1;
  Incumbent best;
  const double hscale = std::max(h.cwiseAbs().maxCoeff(), 1.0);

  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    std::vector<int> free;
    std::vector<int> fixed;
    for (int j = 0; j < n; ++j) ((mask >> j) & 1u ? free : fixed).push_back(j);

    Eigen::LLT<Matrix> llt;
    if (mask != 0) {
      bool inherited = true;
      for (int j : free) inherited = inherited && negdef[mask & ~(1u << j)];
      if (!inherited) continue;
      const auto k = static_cast<Eigen::Index>(free.size());
      Matrix neg(k, k);
      for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) neg(a, b) = -h(free[static_cast<std::size_t>(a)], free[static_cast<std::size_t>(b)]);
      }
      llt.compute(neg);
      if (llt.info() != Eigen::Success || llt.matrixLLT().diagonal().minCoeff() <= 1e-7 * std::sqrt(hscale)) continue;
      negdef[mask] = 1;
    }

    const std::size_t fixed_count = fixed.size();
    const std::uint64_t patterns = 1ull << fixed_count;
    for (std::uint64_t signs = 0; signs < patterns; ++signs) {
      Vector u = Vector::Zero(n);
      for (std::size_t a = 0; a < fixed_count; ++a) u[fixed[a]] = ((signs >> a) & 1u) ? 1.0 : -1.0;
      if (!free.empty()) {
        const auto k = static_cast<Eigen::Index>(free.size());
        Vector rhs(k);
        for (Eigen::Index a = 0; a < k; ++a) {
          const int j = free[static_cast<std::size_t>(a)];
          rhs[a] = g[j] + h.row(j).dot(u);
        }
        // Stationarity in the free block: -H_FF u_F = g_F + H_FB u_B.
        const Vector uf = llt.solve(rhs);
        bool inside = true;
        for (Eigen::Index a = 0; a < k; ++a) {
          if (std::abs(uf[a]) > 1.0 + 1e-12) inside = false;
          u[free[static_cast<std::size_t>(a)]] = std::clamp(uf[a], -1.0, 1.0);
        }
        if (!inside) continue;
      }
      const Vector x = ball.center() + r * u;
      best.offer(q.evaluate(x), x);
    }
  }
  return finish(q, best.point(), true, BallMaxMethod::box_enumeration);
}

// ---------------------------------------------------------------------------
// Heuristic: Frank-Wolfe ascent with exact line search from several starts.

/// argmax_{||s||_p <= radius} d's.
Vector linear_oracle(const Vector& d, const LpBall& ball) {
  const auto n = d.size();
  const double r = ball.radius();
  const double top = d.cwiseAbs().maxCoeff();
  Vector s = Vector::Zero(n);
  if (top == 0.0) return s;
  const NormOrder p = ball.order();
  if (p.is_infinite()) {
    for (Eigen::Index j = 0; j < n; ++j) s[j] = d[j] > 0.0 ? r : (d[j] < 0.0 ? -r : 0.0);
    return s;
  }
  if (p.value() == 1.0) {
    Eigen::Index k = 0;
    d.cwiseAbs().maxCoeff(&k);
    s[k] = d[k] > 0.0 ? r : -r;
    return s;
  }
  const double q = p.value() / (p.value() - 1.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = std::abs(d[j]) / top;
    s[j] = (d[j] >= 0.0 ? 1.0 : -1.0) * std::pow(a, q - 1.0);
  }
  const double norm = lp_norm(s, p);
  return s * (r / norm);
}

Vector frank_wolfe(const QuadraticModel& centered, const LpBall& ball, Vector s, int iterations) {
  const Matrix& h = centered.hessian();
  const Vector& g = centered.gradient();
  for (int it = 0; it < iterations; ++it) {
    const Vector grad = g + h * s;
    const Vector v = linear_oracle(grad, ball);
    const Vector d = v - s;
    const double slope = grad.dot(d);
    if (slope <= 1e-15 * (1.0 + std::abs(centered.evaluate(ball.center() + s)))) break;
    const double curv = d.dot(h * d);
    double step = 1.0;
    if (curv < 0.0) step = std::min(1.0, -slope / curv);
    s += step * d;
  }
  return s;
}

BallMaxResult multistart(const QuadraticModel& q, const LpBall& ball, const BallMaxOptions& options) {
  const QuadraticModel centered = q.rebased(ball.center());
  const auto n = static_cast<Eigen::Index>(ball.dimension());
  const double r = ball.radius();
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> coin(0, 1);

  std::vector<Vector> starts;
  starts.push_back(Vector::Zero(n));
  const int total = std::max(options.starts, 1);
  const int vertex_samples = (total - 1) / 2;
  for (int k = 0; k < vertex_samples; ++k) {
    Vector s = Vector::Zero(n);
    if (ball.order().is_infinite()) {
      for (Eigen::Index j = 0; j < n; ++j) s[j] = coin(rng) ? r : -r;
    } else {
      const Eigen::Index j = k % n;
      s[j] = ((k / n) % 2 == 0) ? r : -r;
    }
    starts.push_back(std::move(s));
  }
  while (static_cast<int>(starts.size()) < total) {
    Vector s(n);
    for (Eigen::Index j = 0; j < n; ++j) s[j] = normal(rng);
    const double norm = lp_norm(s, ball.order());
    if (norm > 0.0) starts.push_back(s * (r / norm));
  }
  for (const Vector& hint : options.hints) {
    if (hint.size() == n && ball.contains(hint, 1e-12)) starts.push_back(hint - ball.center());
  }

  Incumbent best;
  for (const Vector& start : starts) {
    const Vector s = frank_wolfe(centered, ball, start, options.iterations);
    const Vector x = ball.center() + s;
    best.offer(q.evaluate(x), x);
  }
  return finish(q, best.point(), false, BallMaxMethod::multistart);
}

BallMaxResult trust_region_path(const QuadraticModel& q, const LpBall& ball) {
  const QuadraticModel centered = q.rebased(ball.center());
  const TrustRegionStep step =
      solve_trust_region_subproblem(-centered.gradient(), -centered.hessian(), ball.radius());
  return finish(q, ball.center() + step.step, step.certified, BallMaxMethod::trust_region);
}

}  // namespace

std::string_view to_string(BallMaxMethod method) {
  switch (method) {
    case BallMaxMethod::automatic: return "automatic";
    case BallMaxMethod::separable: return "separable";
    case BallMaxMethod::trust_region: return "trust-region";
    case BallMaxMethod::box_enumeration: return "box-enumeration";
    case BallMaxMethod::multistart: return "multistart";
  }
  return "unknown";
}

TrustRegionStep solve_trust_region_subproblem(const Vector& gradient, const Matrix& hessian,
                                              double radius) {
  const auto n = gradient.size();
  if (hessian.rows() != n || hessian.cols() != n) throw DimensionError("trust-region hessian size");
  if (!(radius > 0.0)) throw RangeError("trust-region radius must be positive");

  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (hessian + hessian.transpose()));
  const Vector& beta = eig.eigenvalues();
  const Matrix& basis = eig.eigenvectors();
  const Vector gamma = basis.transpose() * gradient;
  const double gnorm = gradient.norm();
  const double bscale = std::max({beta.cwiseAbs().maxCoeff(), gnorm / radius, std::numeric_limits<double>::min()});
  const double eig_tol = 1e-12 * bscale;
  const double beta_min = beta[0];

  auto step_for = [&](double mu) {
    Vector coeff(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double denom = beta[k] + mu;
      coeff[k] = denom > 0.0 ? -gamma[k] / denom : (gamma[k] == 0.0 ? 0.0 : -gamma[k] * kInf);
    }
    return coeff;
  };
  auto model = [&](const Vector& s) { return gradient.dot(s) + 0.5 * s.dot(hessian * s); };

  TrustRegionStep out;
  auto certify = [&](TrustRegionStep& st) {
    const Vector resid = (hessian * st.step) + st.multiplier * st.step + gradient;
    const double scale = gnorm + bscale * radius;
    const double norm = st.step.norm();
    const bool stationary = resid.norm() <= 1e-8 * scale;
    const bool feasible = norm <= radius * (1.0 + 1e-12);
    const bool complementary = st.multiplier * std::abs(norm - radius) <= 1e-8 * scale * radius;
    const bool curvature = beta_min + st.multiplier >= -1e-8 * bscale;
    st.certified = st.multiplier >= 0.0 && stationary && feasible && complementary && curvature;
  };

  // Interior Newton point.
  if (beta_min > eig_tol) {
    const Vector coeff = step_for(0.0);
    if (coeff.norm() <= radius) {
      out.step = basis * coeff;
      out.multiplier = 0.0;
      certify(out);
      return out;
    }
  }

  const double mu_low = std::max(0.0, -beta_min);
  // Components in the bottom eigenspace.
  double gamma_bottom = 0.0;
  std::vector<Eigen::Index> bottom;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (beta[k] <= beta_min + eig_tol) {
      bottom.push_back(k);
      gamma_bottom = std::max(gamma_bottom, std::abs(gamma[k]));
    }
  }
  const bool bottom_empty = gamma_bottom <= 1e-12 * std::max(gnorm, std::numeric_limits<double>::min()) || gnorm == 0.0;
  if (bottom_empty) {
    Vector coeff = Vector::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      if (beta[k] > beta_min + eig_tol) coeff[k] = -gamma[k] / (beta[k] + mu_low);
    }
    const double pnorm = coeff.norm();
    if (pnorm <= radius) {
      // Hard case: move along the bottom eigenspace to the boundary.
      const double tau = std::sqrt(std::max(0.0, radius * radius - pnorm * pnorm));
      Incumbent best;  // maximizes -model, i.e. minimizes the model
      const Vector base = basis * coeff;
      if (mu_low == 0.0) best.offer(-model(base), base);
      for (Eigen::Index k : bottom) {
        for (double sign : {-1.0, 1.0}) {
          const Vector s = base + sign * tau * basis.col(k);
          best.offer(-model(s), s);
        }
      }
      out.step = best.point();
      out.multiplier = mu_low;
      out.hard_case = true;
      certify(out);
      return out;
    }
  }

  // Secular equation 1/||s(mu)|| = 1/radius on (mu_low, mu_high].
  auto secular = [&](double mu) {
    const double norm = step_for(mu).norm();
    return (std::isfinite(norm) ? 1.0 / norm : 0.0) - 1.0 / radius;
  };
  double mu_high = std::max(mu_low, gnorm / radius - beta_min) * (1.0 + 1e-12) + std::numeric_limits<double>::min();
  while (secular(mu_high) < 0.0) mu_high = 2.0 * mu_high + 1.0;
  double mu = mu_high;
  const double f_low = secular(mu_low);
  if (f_low >= 0.0) {
    mu = mu_low;
  } else if (secular(mu_high) > 0.0) {
    std::uintmax_t iterations = 200;
    boost::math::tools::eps_tolerance<double> tol(50);
    const auto [a, b] = boost::math::tools::toms748_solve(secular, mu_low, mu_high, f_low,
                                                          secular(mu_high), tol, iterations);
    // Stay on the feasible side.
    mu = b;
    if (step_for(a).norm() <= radius) mu = a;
  }
  Vector coeff = step_for(mu);
  const double norm = coeff.norm();
  if (norm > radius) coeff *= radius / norm;
  out.step = basis * coeff;
  out.multiplier = mu;
  certify(out);
  return out;
}

BallMaxResult max_quadratic_over_ball(const QuadraticModel& q, const LpBall& ball,
                                      const BallMaxOptions& options) {
  require_same_dimension(q, ball);
  const bool inf = ball.order().is_infinite();
  const bool two = !inf && ball.order().value() == 2.0;

  switch (options.method) {
    case BallMaxMethod::separable:
      if (auto r = separable_path(q, ball, options)) return *r;
      throw Error("model is not eligible for the separable path");
    case BallMaxMethod::trust_region:
      if (!two) throw Error("trust-region path needs p = 2");
      return trust_region_path(q, ball);
    case BallMaxMethod::box_enumeration:
      if (!inf) throw Error("box enumeration needs p = inf");
      if (ball.dimension() > 30) throw RangeError("box enumeration limited to n <= 30");
      return box_enumeration(q, ball);
    case BallMaxMethod::multistart:
      return multistart(q, ball, options);
    case BallMaxMethod::automatic:
      break;
  }
  if (auto r = separable_path(q, ball, options)) return *r;
  if (two) return trust_region_path(q, ball);
  if (inf && ball.dimension() <= options.max_enumeration_dimension) return box_enumeration(q, ball);
  return multistart(q, ball, options);
}

BallMaxResult max_abs_quadratic_over_ball(const QuadraticModel& q, const LpBall& ball,
                                          const BallMaxOptions& options) {
  BallMaxResult up = max_quadratic_over_ball(q, ball, options);
  BallMaxResult down = max_quadratic_over_ball(q.scaled(-1.0), ball, options);
  const bool certified = up.certified && down.certified;
  const double tie = 1e-13 * (1.0 + std::abs(up.value));
  BallMaxResult& winner =
      (down.value > up.value + tie || (down.value >= up.value - tie && lex_less(down.point, up.point))) ? down : up;
  BallMaxResult out = std::move(winner);
  out.value = std::abs(q.evaluate(out.point));
  out.certified = certified;
  return out;
}

double max_lq_norm_over_lp_ball(std::size_t n, NormOrder p, NormOrder q) {
  if (n == 0) throw RangeError("dimension must be >= 1");
  return std::max(1.0, std::pow(static_cast<double>(n), q.reciprocal() - p.reciprocal()));
}

NormRatioMaximum max_lq_norm_over_lp_ball_numeric(std::size_t n, NormOrder p, NormOrder q) {
  if (n == 0) throw RangeError("dimension must be >= 1");
  const auto ni = static_cast<Eigen::Index>(n);
  NormRatioMaximum out;
  if (q.is_infinite()) {
    // ||x||_inf <= ||x||_p, with equality at e_1.
    out.point = Vector::Zero(ni);
    out.point[0] = 1.0;
    out.value = 1.0;
    return out;
  }
  // Maximize sum_j t_j^q over the unit l_p ball, then take the q-th root.
  const std::vector<SeparableTerm> terms(n, SeparableTerm{0.0, 1.0, q.value()});
  const auto best = maximize_separable(terms, 1.0, p);
  if (!best) throw Error("norm maximization is not separable-eligible");
  out.point = best->magnitudes;
  out.value = lp_norm(out.point, q);
  return out;
}

}  // namespace mfn
