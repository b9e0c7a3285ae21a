#include "mfn/io.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "mfn/errors.hpp"

namespace mfn::io {

using nlohmann::json;

namespace {

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j) out.push_back(v[j]);
  return out;
}

Vector vector_from(const json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n) {
    throw DimensionError(std::string(what) + ": expected array of " + std::to_string(n));
  }
  Vector v(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) v[static_cast<Eigen::Index>(k)] = j[k].get<double>();
  return v;
}

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string shortest(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string to_json(const QuadraticModel& model) {
  const auto n = model.dimension();
  json h = json::array();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      h.push_back(model.hessian()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
    }
  }
  json out = {{"n", n},
              {"b", vector_json(model.base())},
              {"c", model.constant_term()},
              {"g", vector_json(model.gradient())},
              {"H", h}};
  return out.dump();
}

std::string to_json(const InterpolationSet& set) {
  json points = json::array();
  for (std::size_t i = 0; i < set.size(); ++i) points.push_back(vector_json(set.point(i)));
  json out = {{"n", set.dimension()}, {"points", points}, {"base_index", set.base_index() + 1}};
  return out.dump();
}

QuadraticModel model_from_json(std::string_view text) {
  const json j = parse(text);
  try {
    const auto n = j.at("n").get<std::size_t>();
    const Vector b = vector_from(j.at("b"), n, "b");
    const Vector g = vector_from(j.at("g"), n, "g");
    const json& hj = j.at("H");
    Matrix h(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    if (hj.is_array() && hj.size() == n * n && (n == 0 || !hj[0].is_array())) {
      for (std::size_t k = 0; k < n * n; ++k) {
        h(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) = hj[k].get<double>();
      }
    } else if (hj.is_array() && hj.size() == n) {
      for (std::size_t r = 0; r < n; ++r) h.row(static_cast<Eigen::Index>(r)) = vector_from(hj[r], n, "H row").transpose();
    } else {
      throw DimensionError("H: expected n*n row-major entries or n rows");
    }
    return {b, j.at("c").get<double>(), g, h};
  } catch (const json::exception& e) {
    throw Error(std::string("malformed model JSON: ") + e.what());
  }
}

InterpolationSet set_from_json(std::string_view text) {
  const json j = parse(text);
  try {
    const auto n = j.at("n").get<std::size_t>();
    const json& pts = j.at("points");
    if (!pts.is_array() || pts.empty()) throw DimensionError("points: expected a non-empty array");
    std::vector<Vector> points;
    for (const auto& p : pts) points.push_back(vector_from(p, n, "point"));
    std::size_t base = 0;
    if (j.contains("base_index")) {
      const auto one_based = j.at("base_index").get<std::size_t>();
      if (one_based == 0) throw RangeError("base_index is 1-based");
      base = one_based - 1;
    }
    return InterpolationSet::from_points(points, base);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed set JSON: ") + e.what());
  }
}

std::string to_csv(const InterpolationSet& set) {
  std::string out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Vector y = set.point(i);
    for (Eigen::Index j = 0; j < y.size(); ++j) {
      if (j > 0) out += ',';
      out += shortest(y[j]);
    }
    out += '\n';
  }
  return out;
}

InterpolationSet set_from_csv(std::string_view text) {
  std::vector<Vector> points;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      const auto comma = line.find(',', start);
      const auto end = comma == std::string::npos ? line.size() : comma;
      std::string field = line.substr(start, end - start);
      while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) field.pop_back();
      while (!field.empty() && field.front() == ' ') field.erase(field.begin());
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw Error("cannot parse CSV field '" + field + "'");
      }
      row.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    points.push_back(Eigen::Map<Vector>(row.data(), static_cast<Eigen::Index>(row.size())));
  }
  return InterpolationSet::from_points(points);
}

}  // namespace mfn::io
