#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "mfn/errors.hpp"
#include "mfn/io.hpp"
#include "mfn/lagrange.hpp"
#include "mfn/poisedness.hpp"
#include "mfn/powell_set.hpp"
#include "mfn/solver.hpp"
#include "mfn/test_functions.hpp"
#include "table.hpp"

#ifndef MFN_VERSION
#define MFN_VERSION "0.0.0"
#endif

namespace mfn::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tolerances of the verification grid that are not user-configurable.
constexpr double kCoefficientTolerance = 1e-8;
constexpr double kSlack = 1e-8;

struct Common {
  std::string format;
  std::string out;
  std::uint64_t seed = 2024;
};

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  if (text == "table") return Format::table;
  throw UsageError("--format: expected one of csv, json, table; got '" + text + "'");
}

NormOrder parse_order(const std::string& text) {
  try {
    return NormOrder::parse(text);
  } catch (const std::exception&) {
    throw UsageError("--p: expected a real number in [1, inf) or 'inf'; got '" + text + "'");
  }
}

Vector parse_vector(const std::string& text, std::size_t n, const char* flag) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("{}: '{}' is not a number", flag, item));
    }
  }
  if (values.size() != n)
    throw UsageError(fmt::format("{}: expected {} comma-separated values, got {}", flag, n, values.size()));
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void check_dimension(std::size_t n, std::size_t minimum = 1) {
  if (n < minimum) throw UsageError(fmt::format("--n: must be at least {}, got {}", minimum, n));
}

std::size_t resolve_point_count(std::size_t n, std::optional<std::size_t> m) {
  const std::size_t count = m.value_or(default_point_count(n));
  if (count < n + 2 || count > 2 * n + 1)
    throw UsageError(fmt::format("--m: must be in [n+2, 2n+1] = [{}, {}] for n = {}, got {}", n + 2, 2 * n + 1, n,
                                 count));
  return count;
}

void check_radius(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw UsageError(fmt::format("--delta: must be a positive finite number, got {}", delta));
}

SweepMode parse_mode(const std::string& text) {
  if (text == "closed") return SweepMode::closed;
  if (text == "numeric") return SweepMode::numeric;
  if (text == "both") return SweepMode::both;
  throw UsageError("--mode: expected one of closed, numeric, both; got '" + text + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("--set: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

InterpolationSet load_set(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && text[first] == '{') return io::set_from_json(text);
    return io::set_from_csv(text);
  } catch (const std::exception& e) {
    throw UsageError("--set: cannot parse '" + path + "': " + e.what());
  }
}

nlohmann::json make_meta(const std::string& command, std::optional<std::uint64_t> seed) {
  nlohmann::json meta = {{"command", command}, {"version", MFN_VERSION}};
  meta["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  return meta;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("--out: cannot write '" + path + "'");
  file << text;
}

Cell optional_cell(const std::optional<double>& value) {
  if (value) return *value;
  return std::monostate{};
}

Cell order_cell(NormOrder p) {
  if (p.is_infinite()) return std::string("inf");
  return p.value();
}

PoisednessOptions poisedness_options(std::uint64_t seed) {
  PoisednessOptions options;
  options.ball_max.seed = seed;
  return options;
}

bool within(double observed, double expected, double tolerance) {
  return std::abs(observed - expected) <= tolerance * std::max(1.0, std::abs(expected));
}

std::vector<std::string> witness_columns(std::vector<std::string> columns, std::size_t n) {
  for (std::size_t k = 1; k <= n; ++k) columns.push_back("w" + std::to_string(k));
  return columns;
}

std::vector<Cell> sweep_cells(const SweepRow& row) {
  std::vector<Cell> cells{static_cast<std::int64_t>(row.n), static_cast<std::int64_t>(row.m), order_cell(row.p),
                          row.delta, optional_cell(row.closed), optional_cell(row.numeric),
                          optional_cell(row.abs_diff), std::string(to_string(row.method))};
  for (Eigen::Index k = 0; k < row.witness.size(); ++k) cells.emplace_back(row.witness(k));
  for (std::size_t k = static_cast<std::size_t>(row.witness.size()); k < row.n; ++k) cells.emplace_back(std::monostate{});
  return cells;
}

const std::vector<std::string> kSweepColumns = {"n",      "m",        "p",         "delta", "lambda_closed",
                                                "lambda_numeric", "abs_diff", "method"};

// ---------------------------------------------------------------------------------------

int run_gen(std::size_t n, std::optional<std::size_t> m, double delta, const std::string& x0_text,
            const Common& common, std::ostream& out) {
  check_dimension(n);
  check_radius(delta);
  const std::size_t count = resolve_point_count(n, m);
  std::optional<Vector> x0;
  if (!x0_text.empty()) x0 = parse_vector(x0_text, n, "--x0");
  const InterpolationSet set = powell_initial_set(n, count, delta, x0);
  const Format format = parse_format(common.format.empty() ? "csv" : common.format);
  std::string text;
  if (format == Format::csv) {
    text = io::to_csv(set);
  } else if (format == Format::json) {
    nlohmann::json doc = nlohmann::json::parse(io::to_json(set));
    doc["meta"] = make_meta("gen", std::nullopt);
    text = doc.dump(2) + "\n";
  } else {
    std::vector<std::string> columns{"i"};
    for (std::size_t k = 1; k <= n; ++k) columns.push_back("x" + std::to_string(k));
    Table table(columns);
    for (std::size_t i = 0; i < set.size(); ++i) {
      std::vector<Cell> row{static_cast<std::int64_t>(i + 1)};
      for (std::size_t k = 0; k < n; ++k) row.emplace_back(set.point(i)(static_cast<Eigen::Index>(k)));
      table.add(std::move(row));
    }
    text = table.render(format, {});
  }
  emit(text, common.out, out);
  return exit_ok;
}

int run_lagrange(std::size_t n, std::optional<std::size_t> m, double delta, const std::string& mode,
                 const std::string& set_path, const Common& common, std::ostream& out) {
  std::vector<QuadraticModel> polys;
  if (!set_path.empty()) {
    if (mode == "closed") throw UsageError("--mode closed: only available for Powell sets (omit --set)");
    polys = lagrange_polynomials_numeric(load_set(set_path));
  } else {
    check_dimension(n);
    check_radius(delta);
    const std::size_t count = resolve_point_count(n, m);
    if (mode == "closed") {
      for (std::size_t i = 0; i < count; ++i) polys.push_back(powell_lagrange_closed_form(n, count, delta, i));
    } else if (mode == "numeric") {
      polys = lagrange_polynomials_numeric(powell_initial_set(n, count, delta));
    } else {
      throw UsageError("--mode: expected closed or numeric; got '" + mode + "'");
    }
  }
  const std::size_t dim = polys.front().dimension();
  std::vector<std::string> columns{"i", "c"};
  for (std::size_t k = 1; k <= dim; ++k) columns.push_back("g" + std::to_string(k));
  for (std::size_t r = 1; r <= dim; ++r)
    for (std::size_t c = r; c <= dim; ++c) columns.push_back(fmt::format("h{}_{}", r, c));
  Table table(columns);
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const QuadraticModel& q = polys[i];
    std::vector<Cell> row{static_cast<std::int64_t>(i + 1), q.constant_term()};
    for (Eigen::Index k = 0; k < q.gradient().size(); ++k) row.emplace_back(q.gradient()(k));
    for (Eigen::Index r = 0; r < q.hessian().rows(); ++r)
      for (Eigen::Index c = r; c < q.hessian().cols(); ++c) row.emplace_back(q.hessian()(r, c));
    table.add(std::move(row));
  }
  const Format format = parse_format(common.format.empty() ? "csv" : common.format);
  emit(table.render(format, make_meta("lagrange", std::nullopt)), common.out, out);
  return exit_ok;
}

int run_lambda(std::size_t n, std::optional<std::size_t> m, const std::string& p_text, double delta,
               const std::string& mode_text, double tol, const std::string& set_path, const std::string& center_text,
               const Common& common, std::ostream& out) {
  const NormOrder p = parse_order(p_text);
  check_radius(delta);
  const SweepMode mode = parse_mode(mode_text);
  const Format format = parse_format(common.format.empty() ? "table" : common.format);
  const PoisednessOptions options = poisedness_options(common.seed);
  int status = exit_ok;

  if (!set_path.empty()) {
    if (mode != SweepMode::numeric) throw UsageError("--mode: an explicit --set supports only --mode numeric");
    const InterpolationSet set = load_set(set_path);
    const Vector center = center_text.empty() ? set.base_point() : parse_vector(center_text, set.dimension(), "--center");
    const PoisednessReport report = poisedness_constant_numeric(set, LpBall(center, delta, p), options);
    Table table(witness_columns({"n", "m", "p", "delta", "lambda_numeric", "argmax", "method"}, set.dimension()));
    std::vector<Cell> row{static_cast<std::int64_t>(set.dimension()), static_cast<std::int64_t>(set.size()),
                          order_cell(p),
                          delta,
                          report.lambda,
                          static_cast<std::int64_t>(report.argmax + 1),
                          std::string(to_string(report.method))};
    for (Eigen::Index k = 0; k < report.witnesses[report.argmax].size(); ++k)
      row.emplace_back(report.witnesses[report.argmax](k));
    table.add(std::move(row));
    emit(table.render(format, make_meta("lambda", common.seed)), common.out, out);
    return status;
  }

  check_dimension(n, 2);
  const std::size_t count = resolve_point_count(n, m);
  SweepRow row;
  row.n = n;
  row.m = count;
  row.p = p;
  row.delta = delta;
  if (mode != SweepMode::numeric) row.closed = lambda_p_closed(n, count, p).value;
  if (mode != SweepMode::closed) {
    const PoisednessReport report = powell_lambda_numeric(n, count, p, delta, options);
    row.numeric = report.lambda;
    row.method = report.method;
    row.witness = report.witnesses[report.argmax];
  }
  if (row.closed && row.numeric) {
    row.abs_diff = std::abs(*row.closed - *row.numeric);
    if (!within(*row.numeric, *row.closed, tol)) status = exit_failed;
  }
  const LambdaBounds bounds = lambda_p_bounds(n, count, p);
  std::vector<std::string> columns = witness_columns(kSweepColumns, n);
  columns.insert(columns.begin() + 8, {"lower_bound", "upper_bound"});
  Table table(columns);
  std::vector<Cell> cells = sweep_cells(row);
  cells.insert(cells.begin() + 8, {bounds.lower, bounds.upper});
  table.add(std::move(cells));
  emit(table.render(format, make_meta("lambda", common.seed)), common.out, out);
  return status;
}

int run_sweep(std::size_t n, const std::string& p_text, double delta, const std::string& mode_text,
              const Common& common, std::ostream& out) {
  check_dimension(n, 2);
  check_radius(delta);
  const NormOrder p = parse_order(p_text);
  const SweepMode mode = parse_mode(mode_text);
  const auto rows = sweep_lambda_vs_m(n, p, delta, mode, poisedness_options(common.seed));
  Table table(witness_columns(kSweepColumns, n));
  for (const SweepRow& row : rows) table.add(sweep_cells(row));
  const Format format = parse_format(common.format.empty() ? "csv" : common.format);
  emit(table.render(format, make_meta("sweep", common.seed)), common.out, out);
  return exit_ok;
}

// ---------------------------------------------------------------------------------------

struct Check {
  std::string name;
  std::size_t n = 0;
  std::optional<std::size_t> m;
  std::optional<NormOrder> p;
  std::optional<double> delta;
  double expected = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

class Verifier {
 public:
  Verifier(double tol, std::uint64_t seed) : tol_(tol), seed_(seed) {}

  void run(std::size_t n_max, std::size_t samples) {
    for (std::size_t n = 1; n <= n_max; ++n) lagrange_checks(n);
    for (std::size_t n = 2; n <= n_max; ++n)
      for (std::size_t m = n + 2; m <= 2 * n + 1; ++m) lambda_checks(n, m);
    optimality_checks(std::min<std::size_t>(n_max, 4), samples);
  }

  const std::vector<Check>& checks() const { return checks_; }

 private:
  void add(Check check) { checks_.push_back(std::move(check)); }

  void lagrange_checks(std::size_t n) {
    for (std::size_t m = n + 2; m <= 2 * n + 1; ++m) {
      for (double delta : {0.5, 1.0, 3.0}) {
        const auto numeric = lagrange_polynomials_numeric(powell_initial_set(n, m, delta));
        double worst = 0.0;
        for (std::size_t i = 0; i < m; ++i)
          worst = std::max(worst, max_coefficient_difference(numeric[i], powell_lagrange_closed_form(n, m, delta, i)));
        add({"lagrange-closed-form", n, m, std::nullopt, delta, 0.0, worst, kCoefficientTolerance,
             worst <= kCoefficientTolerance});
      }
    }
  }

  void lambda_checks(std::size_t n, std::size_t m) {
    const std::vector<NormOrder> orders = {NormOrder::finite(1.0), NormOrder::finite(1.5), NormOrder::finite(2.0),
                                           NormOrder::finite(2.5), NormOrder::finite(3.0), NormOrder::finite(4.0),
                                           NormOrder::infinity()};
    PoisednessOptions options;
    options.ball_max.seed = seed_;
    std::optional<double> previous;
    for (const NormOrder& p : orders) {
      const PoisednessReport report = powell_lambda_numeric(n, m, p, 1.0, options);
      const double lambda = report.lambda;

      if (const auto closed = lambda_p_closed(n, m, p).value) {
        add({"lambda-closed-form", n, m, p, 1.0, *closed, lambda, tol_, within(lambda, *closed, tol_)});
      }
      const LambdaBounds bounds = lambda_p_bounds(n, m, p);
      add({"lower-bound", n, m, p, 1.0, bounds.lower, lambda, kSlack, lambda >= bounds.lower - kSlack});
      add({"upper-bound", n, m, p, 1.0, bounds.upper, lambda, kSlack, lambda <= bounds.upper + kSlack});

      double others = 1.0;
      for (std::size_t i = 1; i < report.per_index.size(); ++i)
        if (std::abs(report.per_index[i] - 1.0) > std::abs(others - 1.0)) others = report.per_index[i];
      add({"other-indices-equal-one", n, m, p, 1.0, 1.0, others, kSlack, std::abs(others - 1.0) <= kSlack});
      add({"argmax-first-index", n, m, p, 1.0, 1.0, static_cast<double>(report.argmax + 1), 0.0,
           report.argmax == 0});
      if (previous) {
        add({"nondecreasing-in-p", n, m, p, 1.0, *previous, lambda, kSlack, lambda >= *previous - kSlack});
      }
      previous = lambda;
    }
  }

  void optimality_checks(std::size_t n_max, std::size_t samples) {
    std::mt19937_64 rng(seed_);
    PoisednessOptions options;
    options.ball_max.seed = seed_;
    for (std::size_t n = 2; n <= n_max; ++n) {
      for (const NormOrder& p : {NormOrder::finite(1.0), NormOrder::finite(2.0)}) {
        const LpBall ball(Vector::Zero(static_cast<Eigen::Index>(n)), 1.0, p);
        const double reference = powell_lambda_numeric(n, 2 * n + 1, p, 1.0, options).lambda;
        add({"default-set-constant", n, 2 * n + 1, p, 1.0, 1.0, reference, kSlack, std::abs(reference - 1.0) <= kSlack});
        double weakest = std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < samples; ++s) {
          std::uniform_int_distribution<std::size_t> pick(n + 2, 2 * n + 1);
          const std::size_t m = pick(rng);
          const InterpolationSet set = random_poised_set_with_center(m, ball, rng, options.kkt);
          weakest = std::min(weakest, poisedness_constant_numeric(set, ball, options).lambda);
        }
        if (samples > 0)
          add({"random-sets-not-better", n, std::nullopt, p, 1.0, 1.0, weakest, kSlack, weakest >= 1.0 - kSlack});
      }
    }
  }

  double tol_;
  std::uint64_t seed_;
  std::vector<Check> checks_;
};

int run_verify(std::size_t n_max, double tol, std::size_t samples, const Common& common, std::ostream& out) {
  check_dimension(n_max, 1);
  if (!(tol > 0.0)) throw UsageError(fmt::format("--tol: must be positive, got {}", tol));
  Verifier verifier(tol, common.seed);
  verifier.run(n_max, samples);

  Table table({"check", "n", "m", "p", "delta", "expected", "observed", "abs_diff", "tolerance", "pass"});
  std::size_t failures = 0;
  for (const Check& c : verifier.checks()) {
    if (!c.pass) ++failures;
    table.add({c.name, static_cast<std::int64_t>(c.n),
               c.m ? Cell(static_cast<std::int64_t>(*c.m)) : Cell(std::monostate{}),
               c.p ? order_cell(*c.p) : Cell(std::monostate{}), optional_cell(c.delta), c.expected, c.observed,
               std::abs(c.observed - c.expected), c.tolerance, c.pass});
  }
  const Format format = parse_format(common.format.empty() ? "csv" : common.format);
  std::string text = table.render(format, make_meta("verify", common.seed));
  if (format == Format::table)
    text += fmt::format("{} checks, {} failed\n", verifier.checks().size(), failures);
  emit(text, common.out, out);
  return failures == 0 ? exit_ok : exit_failed;
}

// ---------------------------------------------------------------------------------------

int run_solve(const std::string& name, std::size_t n, const std::string& x0_text, std::size_t max_evals,
              double delta, std::optional<std::size_t> m, double final_radius, const std::string& history_path,
              const Common& common, std::ostream& out) {
  check_dimension(n);
  check_radius(delta);
  TestFunction function;
  try {
    function = get_function(name, n, common.seed);
  } catch (const RangeError& e) {
    throw UsageError(std::string("--function: ") + e.what());
  }
  Vector x0(static_cast<Eigen::Index>(n));
  if (x0_text.empty()) {
    for (Eigen::Index k = 0; k < x0.size(); ++k) x0(k) = k % 2 == 0 ? -1.2 : 1.0;
  } else {
    x0 = parse_vector(x0_text, n, "--x0");
  }
  SolverOptions options;
  options.num_points = resolve_point_count(n, m);
  options.initial_radius = delta;
  options.final_radius = final_radius;
  options.max_evaluations = max_evals;
  const SolverResult result = solve(function.objective, x0, options);

  if (!history_path.empty()) {
    std::ofstream file(history_path, std::ios::binary);
    if (!file) throw UsageError("--history: cannot write '" + history_path + "'");
    file << history_csv(result.history);
  }

  std::vector<std::string> columns{"function", "n", "m", "evaluations", "best_value", "known_minimum", "gap", "status"};
  for (std::size_t k = 1; k <= n; ++k) columns.push_back("x" + std::to_string(k));
  Table table(columns);
  std::vector<Cell> row{function.name,
                        static_cast<std::int64_t>(n),
                        static_cast<std::int64_t>(*options.num_points),
                        static_cast<std::int64_t>(result.evaluations),
                        result.best_value,
                        optional_cell(function.minimum),
                        function.minimum ? Cell(result.best_value - *function.minimum) : Cell(std::monostate{}),
                        std::string(to_string(result.status))};
  for (Eigen::Index k = 0; k < result.best_point.size(); ++k) row.emplace_back(result.best_point(k));
  table.add(std::move(row));
  const Format format = parse_format(common.format.empty() ? "table" : common.format);
  emit(table.render(format, make_meta("solve", common.seed)), common.out, out);
  return exit_ok;
}

void add_common(CLI::App* cmd, Common& common, bool seeded) {
  cmd->add_option("--format", common.format, "csv, json or table");
  cmd->add_option("--out", common.out, "Write the result to this file instead of standard output");
  if (seeded) cmd->add_option("--seed", common.seed, "Seed for randomized steps")->capture_default_str();
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum Frobenius norm interpolation and well-poisedness tools", "mfn"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(MFN_VERSION));

  Common common;
  std::size_t n = 2;
  std::optional<std::size_t> m;
  double delta = 1.0;
  std::string x0_text;
  std::string mode;
  std::string p_text = "2";
  double tol = 1e-6;
  std::string set_path;
  std::string center_text;
  std::size_t n_max = 8;
  std::size_t samples = 10;
  std::string function_name = "sphere";
  std::size_t max_evals = 500;
  double final_radius = 1e-8;
  std::string history_path;

  auto* gen = app.add_subcommand("gen", "Powell's initial interpolation set");
  gen->add_option("--n", n, "Dimension")->required();
  gen->add_option("--m", m, "Number of points, in [n+2, 2n+1] (default 2n+1)");
  gen->add_option("--delta", delta, "Radius")->capture_default_str();
  gen->add_option("--x0", x0_text, "Center as comma-separated values (default origin)");
  add_common(gen, common, false);

  auto* lagrange = app.add_subcommand("lagrange", "Coefficients of the Lagrange polynomials");
  lagrange->add_option("--n", n, "Dimension");
  lagrange->add_option("--m", m, "Number of points, in [n+2, 2n+1] (default 2n+1)");
  lagrange->add_option("--delta", delta, "Radius")->capture_default_str();
  lagrange->add_option("--mode", mode, "closed or numeric")->default_str("numeric");
  lagrange->add_option("--set", set_path, "Interpolation set file (JSON or CSV) instead of Powell's set");
  add_common(lagrange, common, false);

  auto* lambda = app.add_subcommand("lambda", "Constant of well-poisedness in an l_p ball");
  lambda->add_option("--n", n, "Dimension");
  lambda->add_option("--m", m, "Number of points, in [n+2, 2n+1] (default 2n+1)");
  lambda->add_option("--p", p_text, "Norm order, a real >= 1 or inf")->capture_default_str();
  lambda->add_option("--delta", delta, "Radius")->capture_default_str();
  lambda->add_option("--mode", mode, "closed, numeric or both")->default_str("both");
  lambda->add_option("--tol", tol, "Relative tolerance for closed/numeric agreement")->capture_default_str();
  lambda->add_option("--set", set_path, "Interpolation set file (JSON or CSV) instead of Powell's set");
  lambda->add_option("--center", center_text, "Ball center for --set (default: the set's base point)");
  add_common(lambda, common, true);

  auto* sweep = app.add_subcommand("sweep", "Constant of Powell's set for every m in [n+2, 2n+1]");
  sweep->add_option("--n", n, "Dimension")->required();
  sweep->add_option("--p", p_text, "Norm order, a real >= 1 or inf")->capture_default_str();
  sweep->add_option("--delta", delta, "Radius")->capture_default_str();
  sweep->add_option("--mode", mode, "closed, numeric or both")->default_str("both");
  add_common(sweep, common, true);

  auto* verify = app.add_subcommand("verify", "Check closed forms, bounds and reductions over a parameter grid");
  verify->add_option("--n-max", n_max, "Largest dimension in the grid")->capture_default_str();
  verify->add_option("--tol", tol, "Relative tolerance for closed/numeric agreement")->capture_default_str();
  verify->add_option("--samples", samples, "Random sets per (n, p) in the optimality check")->capture_default_str();
  add_common(verify, common, true);

  auto* solve_cmd = app.add_subcommand("solve", "Run the derivative-free trust-region solver on a test function");
  solve_cmd->add_option("--function", function_name, "sphere, quadratic-crossterms, rosenbrock or linear")
      ->capture_default_str();
  solve_cmd->add_option("--n", n, "Dimension")->capture_default_str();
  solve_cmd->add_option("--x0", x0_text, "Starting point (default -1.2, 1, -1.2, ...)");
  solve_cmd->add_option("--max-evals", max_evals, "Evaluation budget")->capture_default_str();
  solve_cmd->add_option("--delta", delta, "Initial trust radius")->capture_default_str();
  solve_cmd->add_option("--m", m, "Number of interpolation points (default 2n+1)");
  solve_cmd->add_option("--final-radius", final_radius, "Stop once the trust radius is below this")
      ->capture_default_str();
  solve_cmd->add_option("--history", history_path, "Write the iteration history as CSV");
  add_common(solve_cmd, common, true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (gen->parsed()) return run_gen(n, m, delta, x0_text, common, out);
    if (lagrange->parsed())
      return run_lagrange(n, m, delta, mode.empty() ? "numeric" : mode, set_path, common, out);
    if (lambda->parsed())
      return run_lambda(n, m, p_text, delta, mode.empty() ? "both" : mode, tol, set_path, center_text, common, out);
    if (sweep->parsed()) return run_sweep(n, p_text, delta, mode.empty() ? "both" : mode, common, out);
    if (verify->parsed()) return run_verify(n_max, tol, samples, common, out);
    if (solve_cmd->parsed())
      return run_solve(function_name, n, x0_text, max_evals, delta, m, final_radius, history_path, common, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_failed;
  }
  return exit_usage;
}

}  // namespace mfn::cli
