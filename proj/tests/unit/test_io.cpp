#include <random>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "mfn/errors.hpp"
#include "mfn/io.hpp"
#include "mfn/powell_set.hpp"
#include "oracles.hpp"

using namespace mfn;

TEST_CASE("model json layout") {
  Matrix h(2, 2);
  h << 1, 2, 2, 3;
  const QuadraticModel q(Vector::Zero(2), 0.5, Vector::Ones(2), h);
  const auto doc = nlohmann::json::parse(io::to_json(q));
  CHECK(doc["H"] == nlohmann::json({1.0, 2.0, 2.0, 3.0}));
  CHECK(doc["n"] == 2);
  CHECK(doc["c"] == 0.5);
  CHECK(doc["b"] == nlohmann::json({0.0, 0.0}));
}

TEST_CASE("model json round trip is exact") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 5;
    Vector b(n), g(n);
    for (int k = 0; k < n; ++k) {
      b(k) = normal(rng);
      g(k) = normal(rng) * 1e-7;
    }
    const QuadraticModel q(b, normal(rng) * 1e12, g, oracle::random_symmetric(rng, n));
    const QuadraticModel r = io::model_from_json(io::to_json(q));
    CHECK(r.base() == q.base());
    CHECK(r.constant_term() == q.constant_term());
    CHECK(r.gradient() == q.gradient());
    CHECK(r.hessian() == q.hessian());
  }
}

TEST_CASE("nested hessian is accepted") {
  const auto q = io::model_from_json(R"({"n":2,"b":[0,0],"c":1,"g":[0,1],"H":[[2,0],[0,4]]})");
  CHECK(q.hessian()(1, 1) == 4.0);
  CHECK_THROWS_AS(io::model_from_json(R"({"n":2,"b":[0],"c":1,"g":[0,1],"H":[2,0,0,4]})"), Error);
  CHECK_THROWS_AS(io::model_from_json("not json"), Error);
}

TEST_CASE("set json and csv round trip") {
  const InterpolationSet set = powell_initial_set(3, 6, 0.1, Vector::Constant(3, 1.0 / 3.0));
  const InterpolationSet from_json = io::set_from_json(io::to_json(set));
  CHECK(from_json.points() == set.points());
  CHECK(from_json.base_index() == set.base_index());
  const InterpolationSet from_csv = io::set_from_csv(io::to_csv(set));
  CHECK(from_csv.points() == set.points());
}

TEST_CASE("csv layout is one point per row") {
  const std::string text = io::to_csv(powell_initial_set(2, 5, 1.0));
  CHECK(text == "0,0\n1,0\n0,1\n-1,0\n0,-1\n");
  CHECK_THROWS_AS(io::set_from_csv("1,2\n3\n"), Error);
}

TEST_CASE("shortest representation") {
  CHECK(io::shortest(0.1) == "0.1");
  CHECK(io::shortest(1.0) == "1");
  CHECK(std::stod(io::shortest(1.0 / 3.0)) == 1.0 / 3.0);
}
