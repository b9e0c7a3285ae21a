#include "mfn/test_functions.hpp"

#include <random>

#include "mfn/errors.hpp"

namespace mfn {

std::vector<std::string_view> test_function_names() {
  return {"sphere", "quadratic-crossterms", "rosenbrock", "linear"};
}

TestFunction get_function(std::string_view name, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw RangeError("test function dimension must be >= 1");
  const auto ni = static_cast<Eigen::Index>(n);
  TestFunction fn;
  fn.name = std::string(name);
  fn.dimension = n;

  if (name == "sphere") {
    fn.objective = [](const Vector& x) { return x.squaredNorm(); };
    fn.minimizer = Vector::Zero(ni);
    fn.minimum = 0.0;
  } else if (name == "quadratic-crossterms") {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    Matrix a(ni, ni);
    for (Eigen::Index i = 0; i < ni; ++i) {
      for (Eigen::Index j = 0; j < ni; ++j) a(i, j) = uniform(rng);
    }
    Vector g(ni);
    for (Eigen::Index j = 0; j < ni; ++j) g[j] = uniform(rng);
    const double c = uniform(rng);
    const Matrix h = a.transpose() * a + Matrix::Identity(ni, ni);
    QuadraticModel q(Vector::Zero(ni), c, g, h);
    const Eigen::LLT<Matrix> llt(q.hessian());
    const Vector xstar = -llt.solve(g);
    fn.objective = [q](const Vector& x) { return q.evaluate(x); };
    fn.minimizer = xstar;
    fn.minimum = c + 0.5 * g.dot(xstar);
    fn.quadratic = q;
  } else if (name == "rosenbrock") {
    if (n < 2) throw RangeError("rosenbrock needs n >= 2");
    fn.objective = [](const Vector& x) {
      double sum = 0.0;
      for (Eigen::Index j = 0; j + 1 < x.size(); ++j) {
        const double a = x[j + 1] - x[j] * x[j];
        const double b = 1.0 - x[j];
        sum += 100.0 * a * a + b * b;
      }
      return sum;
    };
    fn.minimizer = Vector::Ones(ni);
    fn.minimum = 0.0;
  } else if (name == "linear") {
    fn.objective = [](const Vector& x) { return 1.0 + x.sum(); };
  } else {
    std::string valid;
    for (auto v : test_function_names()) valid += (valid.empty() ? "" : ", ") + std::string(v);
    throw RangeError("unknown test function '" + std::string(name) + "' (valid: " + valid + ")");
  }
  return fn;
}

}  // namespace mfn
