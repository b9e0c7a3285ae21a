#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "mfn/ball_max.hpp"
#include "mfn/interpolation.hpp"
#include "mfn/lagrange.hpp"
#include "mfn/poisedness.hpp"
#include "mfn/powell_set.hpp"
#include "mfn/solver.hpp"

using namespace mfn;

namespace {

QuadraticModel random_model(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto ni = static_cast<Eigen::Index>(n);
  Matrix h(ni, ni);
  Vector g(ni);
  for (Eigen::Index r = 0; r < ni; ++r) {
    g(r) = u(rng);
    for (Eigen::Index c = 0; c < ni; ++c) h(r, c) = u(rng);
  }
  return QuadraticModel(Vector::Zero(ni), 0.0, g, h);
}

}  // namespace

static void BM_AssembleKkt(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const InterpolationSet set = powell_initial_set(n, 2 * n + 1, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_kkt(set));
}
BENCHMARK(BM_AssembleKkt)->Arg(2)->Arg(8)->Arg(16)->Arg(32);

static void BM_InterpolateMfn(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const InterpolationSet set = powell_initial_set(n, 2 * n + 1, 1.0);
  std::vector<double> f(set.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = set.point(i).squaredNorm() + set.point(i).sum();
  for (auto _ : state) benchmark::DoNotOptimize(interpolate_mfn(set, f));
}
BENCHMARK(BM_InterpolateMfn)->Arg(2)->Arg(8)->Arg(16)->Arg(32);

static void BM_LagrangeNumeric(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const InterpolationSet set = powell_initial_set(n, n + 2, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(lagrange_polynomials_numeric(set));
}
BENCHMARK(BM_LagrangeNumeric)->Arg(2)->Arg(8)->Arg(16);

static void BM_BallMaxTrustRegion(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const QuadraticModel q = random_model(n, 1);
  const LpBall ball(Vector::Zero(static_cast<Eigen::Index>(n)), 1.0, NormOrder::finite(2));
  for (auto _ : state) benchmark::DoNotOptimize(max_quadratic_over_ball(q, ball));
}
BENCHMARK(BM_BallMaxTrustRegion)->Arg(2)->Arg(8)->Arg(32);

static void BM_BallMaxSeparable(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const QuadraticModel q = powell_lagrange_closed_form(n, n + 3, 1.0, 0);
  const LpBall ball(Vector::Zero(static_cast<Eigen::Index>(n)), 1.0, NormOrder::finite(1.5));
  for (auto _ : state) benchmark::DoNotOptimize(max_abs_quadratic_over_ball(q, ball));
}
BENCHMARK(BM_BallMaxSeparable)->Arg(4)->Arg(8)->Arg(16);

static void BM_BallMaxBoxEnumeration(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const QuadraticModel q = random_model(n, 2);
  const LpBall ball(Vector::Zero(static_cast<Eigen::Index>(n)), 1.0, NormOrder::infinity());
  for (auto _ : state) benchmark::DoNotOptimize(max_quadratic_over_ball(q, ball));
}
BENCHMARK(BM_BallMaxBoxEnumeration)->Arg(2)->Arg(4)->Arg(8);

static void BM_BallMaxMultistart(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const QuadraticModel q = random_model(n, 3);
  const LpBall ball(Vector::Zero(static_cast<Eigen::Index>(n)), 1.0, NormOrder::finite(3));
  for (auto _ : state) benchmark::DoNotOptimize(max_quadratic_over_ball(q, ball));
}
BENCHMARK(BM_BallMaxMultistart)->Arg(2)->Arg(8);

static void BM_PowellLambdaNumeric(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(powell_lambda_numeric(n, n + 3, NormOrder::finite(2.5)));
}
BENCHMARK(BM_PowellLambdaNumeric)->Arg(4)->Arg(8)->Arg(16);

static void BM_SolveRosenbrock(benchmark::State& state) {
  const auto f = get_function("rosenbrock", 2);
  Vector x0(2);
  x0 << -1.2, 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(solve(f.objective, x0));
}
BENCHMARK(BM_SolveRosenbrock);
BENCHMARK_MAIN();
