#include "table.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace mfn::cli {

std::string machine_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  return fmt::format("{:.17g}", value);
}

std::string human_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  return fmt::format("{:.6g}", value);
}

namespace {

template <typename Number>
std::string cell_text(const Cell& cell, Number&& number) {
  struct Visitor {
    Number& number;
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double v) const { return number(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{number}, cell);
}

nlohmann::json cell_json(const Cell& cell) {
  struct Visitor {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(double v) const {
      if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
      return v;
    }
    nlohmann::json operator()(std::int64_t v) const { return v; }
    nlohmann::json operator()(const std::string& v) const { return v; }
    nlohmann::json operator()(bool v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

}  // namespace

std::string Table::csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns_.size(); ++c) out += (c ? "," : "") + columns_[c];
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += cell_text(row[c], machine_number);
    }
    out += '\n';
  }
  return out;
}

std::string Table::human() const {
  std::vector<std::vector<std::string>> text;
  std::vector<std::size_t> width(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) width[c] = columns_[c].size();
  for (const auto& row : rows_) {
    auto& line = text.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      line.push_back(cell_text(row[c], human_number));
      if (c < width.size()) width[c] = std::max(width[c], line.back().size());
    }
  }
  std::string out;
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out += "  ";
      const std::size_t w = c < width.size() ? width[c] : cells[c].size();
      out += fmt::format("{:>{}}", cells[c], w);
    }
    out += '\n';
  };
  emit(columns_);
  for (const auto& line : text) emit(line);
  return out;
}

nlohmann::json Table::json(const nlohmann::json& meta) const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : rows_) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size() && c < columns_.size(); ++c) obj[columns_[c]] = cell_json(row[c]);
    rows.push_back(std::move(obj));
  }
  return {{"meta", meta}, {"rows", rows}};
}

std::string Table::render(Format format, const nlohmann::json& meta) const {
  switch (format) {
    case Format::csv: return csv();
    case Format::table: return human();
    case Format::json: return json(meta).dump(2) + "\n";
  }
  return {};
}

}  // namespace mfn::cli
