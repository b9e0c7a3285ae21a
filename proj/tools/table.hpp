#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace mfn::cli {

using Cell = std::variant<std::monostate, double, std::int64_t, std::string, bool>;

enum class Format { csv, json, table };

/// Column-oriented result table rendered as CSV (17 significant digits),
/// JSON ({meta, rows}) or an aligned human table (6 significant digits).
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<Cell> row) { rows_.push_back(std::move(row)); }
  std::size_t size() const { return rows_.size(); }

  std::string render(Format format, const nlohmann::json& meta) const;

 private:
  std::string csv() const;
  std::string human() const;
  nlohmann::json json(const nlohmann::json& meta) const;

  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string machine_number(double value);
std::string human_number(double value);

}  // namespace mfn::cli
