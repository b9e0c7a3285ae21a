// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "mfn/ball_max.hpp"
#include "mfn/interpolation.hpp"
#include "mfn/lagrange.hpp"
#include "mfn/poisedness.hpp"
#include "mfn/powell_set.hpp"
#include "mfn/solver.hpp"
#include "mfn/test_functions.hpp"
#include "oracles.hpp"

using namespace mfn;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds, <= 0 for none
  std::function<Outcome()> body;
};

NormOrder P(double p) { return std::isinf(p) ? NormOrder::infinity() : NormOrder::finite(p); }

// Formulas written out here rather than taken from the library.
double pow00(double base, double e) { return base == 0.0 ? 0.0 : std::pow(base, e); }
double lower_formula(double n, double m, double p) {
  const double e = std::isinf(p) ? 1.0 : (p - 1) / p;
  return 1 + pow00(2 * n + 1 - m, e);
}
double full_set_formula(double n, double p) {
  const double e = std::isinf(p) ? 1.0 : (p - 2) / p;
  return std::max(1.0, std::pow(n, e) - 1);
}
double norm_ratio_formula(double n, double p, double q) {
  const double ip = std::isinf(p) ? 0.0 : 1 / p;
  const double iq = std::isinf(q) ? 0.0 : 1 / q;
  return std::max(1.0, std::pow(n, iq - ip));
}

std::string fmt(const char* format, double a, double b = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

double largest_coefficient(const QuadraticModel& q) {
  return std::max({std::abs(q.constant_term()), q.gradient().cwiseAbs().maxCoeff(), q.hessian().cwiseAbs().maxCoeff()});
}

std::vector<double> values_of(const Vector& v) { return {v.data(), v.data() + v.size()}; }

InterpolationSet random_poised(std::mt19937_64& rng, int n, int m) {
  while (true) {
    const auto set = InterpolationSet::from_points(oracle::random_points(rng, n, m));
    if (is_poised(set).poised) return set;
  }
}

Outcome lagrange_closed_forms() {
  double worst = 0.0;
  std::size_t count = 0;
  for (std::size_t n = 1; n <= 8; ++n)
    for (std::size_t m = n + 2; m <= 2 * n + 1; ++m)
      for (double delta : {0.5, 1.0, 3.0}) {
        const auto numeric = lagrange_polynomials_numeric(powell_initial_set(n, m, delta));
        for (std::size_t i = 0; i < m; ++i, ++count)
          worst = std::max(worst, max_coefficient_difference(numeric[i], powell_lagrange_closed_form(n, m, delta, i)));
      }
  return {worst <= 1e-8, fmt("%.0f polynomials, max coefficient difference %.3g", double(count), worst)};
}

Outcome box_constant() {
  double worst = 0.0;
  for (std::size_t n = 2; n <= 8; ++n)
    for (std::size_t m = n + 2; m <= 2 * n + 1; ++m) {
      const double expected = std::max<double>(n - 1, 2.0 * n - m + 2);
      worst = std::max(worst, std::abs(powell_lambda_numeric(n, m, NormOrder::infinity()).lambda - expected));
    }
  const double example = powell_lambda_numeric(5, 7, NormOrder::infinity()).lambda;
  return {worst <= 1e-6 && std::abs(example - 5.0) <= 1e-6,
          fmt("max |numeric - max{n-1, 2n-m+2}| = %.3g; n=5,m=7 -> %.12g", worst, example)};
}

Outcome small_order_constant() {
  double worst = 0.0;
  for (std::size_t n = 2; n <= 8; ++n)
    for (std::size_t m = n + 2; m <= 2 * n + 1; ++m)
      for (double p : {1.0, 1.5, 2.0})
        worst = std::max(worst, std::abs(powell_lambda_numeric(n, m, P(p)).lambda - lower_formula(n, m, p)));
  const double example = powell_lambda_numeric(7, 15, P(1)).lambda;
  return {worst <= 1e-6 && std::abs(example - 1.0) <= 1e-6,
          fmt("max deviation %.3g; n=7,m=15,p=1 -> %.12g", worst, example)};
}

Outcome full_set_constant() {
  double worst = 0.0;
  for (std::size_t n = 2; n <= 16; ++n)
    for (double p : {1.0, 2.0, 3.0, 4.0, double(INFINITY)})
      worst = std::max(worst, std::abs(powell_lambda_numeric(n, 2 * n + 1, P(p)).lambda - full_set_formula(n, p)));
  const double a = powell_lambda_numeric(16, 33, P(4)).lambda;
  const double b = powell_lambda_numeric(4, 9, NormOrder::infinity()).lambda;
  return {worst <= 1e-6 && std::abs(a - 3) <= 1e-6 && std::abs(b - 3) <= 1e-6,
          fmt("max deviation %.3g; n=16,p=4 -> %.12g", worst, a) + fmt("; n=4,p=inf -> %.12g", b)};
}

const double kGridOrders[] = {1.0, 1.5, 2.0, 2.5, 3.0, 4.0, INFINITY};

Outcome bounds_sandwich() {
  double slack = INFINITY;
  std::size_t count = 0;
  for (std::size_t n = 2; n <= 8; ++n)
    for (std::size_t m = n + 2; m <= 2 * n + 1; ++m)
      for (double p : kGridOrders) {
        const double lambda = powell_lambda_numeric(n, m, P(p)).lambda;
        slack = std::min({slack, lambda - lower_formula(n, m, p), double(n) - lambda});
        ++count;
      }
  return {slack >= -1e-8, fmt("%.0f (n, m, p) tuples, smallest slack %.3g", double(count), slack)};
}

Outcome reduction_to_first() {
  double worst = 0.0;
  std::size_t wrong_argmax = 0;
  for (std::size_t n = 2; n <= 8; ++n)
    for (std::size_t m = n + 2; m <= 2 * n + 1; ++m)
      for (double p : kGridOrders) {
        const auto report = powell_lambda_numeric(n, m, P(p));
        for (std::size_t i = 1; i < m; ++i) worst = std::max(worst, std::abs(report.per_index[i] - 1.0));
        if (report.argmax != 0 || report.per_index[0] < report.lambda - 1e-8) ++wrong_argmax;
      }
  return {worst <= 1e-8 && wrong_argmax == 0,
          fmt("max |max|L_i| - 1| over i >= 2: %.3g; argmax elsewhere: %.0f", worst, double(wrong_argmax))};
}

Outcome norm_ratio() {
  const double orders[] = {1.0, 1.5, 2.0, 3.0, INFINITY};
  double worst = 0.0;
  for (std::size_t n = 1; n <= 8; ++n)
    for (double p : orders)
      for (double q : orders) {
        const auto numeric = max_lq_norm_over_lp_ball_numeric(n, P(p), P(q));
        worst = std::max(worst, std::abs(numeric.value - norm_ratio_formula(n, p, q)));
      }
  return {worst <= 1e-6, fmt("max deviation %.3g", worst)};
}

Outcome random_sets_not_better() {
  std::mt19937_64 rng(20240601);
  const int dims[] = {2, 3, 4};
  const double orders[] = {1.0, 2.0};
  double weakest = INFINITY;
  double reference_dev = 0.0;
  double beat = INFINITY;
  int samples = 0;
  int pair = 0;
  for (int n : dims)
    for (double p : orders) {
      const double reference = powell_lambda_numeric(n, 2 * n + 1, P(p)).lambda;
      reference_dev = std::max(reference_dev, std::abs(reference - 1.0));
      const LpBall ball(Vector::Zero(n), 1.0, P(p));
      // 200 sets split over the six (n, p) pairs
      const int share = 200 / 6 + (pair++ < 200 % 6 ? 1 : 0);
      for (int k = 0; k < share; ++k, ++samples) {
        std::uniform_int_distribution<int> pick(n + 2, 2 * n + 1);
        const auto set = random_poised_set_with_center(pick(rng), ball, rng);
        const double lambda = poisedness_constant_numeric(set, ball).lambda;
        weakest = std::min(weakest, lambda);
        beat = std::min(beat, lambda - reference);
      }
    }
  return {samples == 200 && weakest >= 1 - 1e-8 && reference_dev <= 1e-8 && beat >= -1e-8,
          fmt("%.0f sets, smallest constant %.12g", samples, weakest) +
              fmt("; default set deviation from 1: %.3g", reference_dev)};
}

Outcome interpolation_properties() {
  std::mt19937_64 rng(77);
  // Coefficient differences are measured relative to 1 + the largest coefficient involved.
  double affine = 0.0, unity = 0.0, reconstruction = 0.0, fixed_point = 0.0;
  double unity_abs = 0.0, reconstruction_abs = 0.0;
  int sets = 0;
  for (int n : {2, 5}) {
    for (int k = 0; k < 100; ++k, ++sets) {
      const int m = n + 2 + k % n;
      const InterpolationSet set = random_poised(rng, n, m);
      Vector f(m), affine_f(m), prev_f(m);
      const Vector a = oracle::uniform_point(rng, n);
      const QuadraticModel prev(oracle::uniform_point(rng, n), 0.5, oracle::uniform_point(rng, n),
                                oracle::random_symmetric(rng, n));
      for (int i = 0; i < m; ++i) {
        const Vector y = set.point(static_cast<std::size_t>(i));
        f(i) = std::cos(y.sum()) + y.squaredNorm();
        affine_f(i) = 2.0 - a.dot(y);
        prev_f(i) = prev(y);
      }
      affine = std::max(affine, interpolate_mfn(set, values_of(affine_f)).hessian_frobenius_norm());

      const auto polys = lagrange_polynomials_numeric(set);
      QuadraticModel sum = QuadraticModel::zero(static_cast<std::size_t>(n)).rebased(set.base_point());
      QuadraticModel combo = sum;
      for (int i = 0; i < m; ++i) {
        sum = sum + polys[i];
        combo = combo + QuadraticModel(polys[i].base(), f(i) * polys[i].constant_term(), f(i) * polys[i].gradient(),
                                       f(i) * polys[i].hessian());
      }
      double scale = 1.0, fscale = 1.0;
      for (int i = 0; i < m; ++i) {
        const double c = largest_coefficient(polys[i]);
        scale = std::max(scale, 1.0 + c);
        fscale = std::max(fscale, 1.0 + std::abs(f(i)) * c);
      }
      const double u = max_coefficient_difference(sum, QuadraticModel::constant(n, 1.0));
      const double r = max_coefficient_difference(interpolate_mfn(set, values_of(f)), combo);
      unity_abs = std::max(unity_abs, u);
      reconstruction_abs = std::max(reconstruction_abs, r);
      unity = std::max(unity, u / scale);
      reconstruction = std::max(reconstruction, r / fscale);
      const QuadraticModel updated = interpolate_sym_broyden(set, values_of(prev_f), prev);
      fixed_point = std::max(fixed_point, max_coefficient_difference(updated, prev) / (1.0 + largest_coefficient(prev)));
    }
  }
  std::ostringstream detail;
  detail << sets << " sets; ||H||_F affine " << affine << ", partition of unity " << unity << " (absolute "
         << unity_abs << "), reconstruction " << reconstruction << " (absolute " << reconstruction_abs
         << "), least-change fixed point " << fixed_point;
  return {affine <= 1e-8 && unity <= 1e-8 && reconstruction <= 1e-8 && fixed_point <= 1e-10, detail.str()};
}

struct SolverWatch {
  std::optional<InterpolationSet> previous;
  std::size_t max_changed = 0;
  double worst_residual = 0.0;
  void operator()(const SolverState& s) {
    double fmax = 0.0;
    for (double v : s.values) fmax = std::max(fmax, std::abs(v));
    for (std::size_t i = 0; i < s.set.size(); ++i)
      worst_residual = std::max(worst_residual, std::abs(s.model(s.set.point(i)) - s.values[i]) / (1 + fmax));
    if (previous) {
      std::size_t changed = 0;
      for (std::size_t i = 0; i < s.set.size(); ++i) changed += s.set.point(i) != previous->point(i);
      max_changed = std::max(max_changed, changed);
    }
    previous = s.set;
  }
};

Outcome solver_demo() {
  SolverWatch watch;
  SolverOptions options;
  options.max_evaluations = 100;
  const auto sphere = solve(get_function("sphere", 3).objective, Vector::Ones(3), options, std::ref(watch));
  const auto quad_fn = get_function("quadratic-crossterms", 2, 7);
  options.max_evaluations = 200;
  SolverWatch watch2;
  const auto quad = solve(quad_fn.objective, Vector::Zero(2), options, std::ref(watch2));
  const double gap = quad.best_value - *quad_fn.minimum;
  const bool pass = sphere.best_value <= 1e-8 && sphere.evaluations <= 100 && gap <= 1e-6 && quad.evaluations <= 200 &&
                    watch.max_changed <= 1 && watch2.max_changed <= 1 && watch.worst_residual <= 1e-8 &&
                    watch2.worst_residual <= 1e-8;
  std::ostringstream detail;
  detail << "sphere " << sphere.best_value << " in " << sphere.evaluations << " evals; quadratic gap " << gap << " in "
         << quad.evaluations << " evals; max points changed per iteration "
         << std::max(watch.max_changed, watch2.max_changed) << "; worst relative residual "
         << std::max(watch.worst_residual, watch2.worst_residual);
  return {pass, detail.str()};
}

std::string capture(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::dispatch(args, out, err);
  return out.str();
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> commands = {
      {"verify", "--n-max", "5", "--seed", "17", "--format", "csv"},
      {"verify", "--n-max", "4", "--seed", "17", "--format", "json"},
      {"sweep", "--n", "5", "--p", "2.5", "--seed", "17", "--format", "csv"},
      {"sweep", "--n", "3", "--p", "inf", "--seed", "17", "--format", "json"},
  };
  for (const auto& args : commands) {
    int c1 = 0, c2 = 0;
    const std::string a = capture(args, c1);
    const std::string b = capture(args, c2);
    if (a != b || a.empty() || c1 != c2) return {false, "output differs for " + args[0]};
    if (c1 != 0) return {false, args[0] + " exited with " + std::to_string(c1)};
  }
  return {true, std::to_string(commands.size()) + " commands repeated, outputs identical"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "closed-form Lagrange polynomials match numeric ones", 10.0, lagrange_closed_forms},
      {2, "constant in the box ball equals max{n-1, 2n-m+2}", 30.0, box_constant},
      {3, "constant for p in {1, 1.5, 2} equals the lower bound", 0.0, small_order_constant},
      {4, "constant of the full set equals max{1, n^((p-2)/p) - 1}", 0.0, full_set_constant},
      {5, "constant lies between the lower and upper bounds", 0.0, bounds_sandwich},
      {6, "constant is attained by the first Lagrange polynomial", 0.0, reduction_to_first},
      {7, "max of the q-norm over the unit p-ball", 0.0, norm_ratio},
      {8, "random sets containing the center do not beat the default set", 0.0, random_sets_not_better},
      {9, "interpolation properties on random sets", 0.0, interpolation_properties},
      {10, "solver reaches known minima with one-point updates", 5.0, solver_demo},
      {11, "verify and sweep are deterministic", 0.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && seconds >= c.time_limit) {
      outcome.pass = false;
      outcome.detail += fmt("; exceeded %.0f s", c.time_limit);
    }
    if (!outcome.pass) ++failures;
    std::printf("%s [%d] %s: %s (%.2f s)\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
