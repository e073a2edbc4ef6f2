#pragma once

// Row-oriented report tables shared by the CSV and JSON writers, so both
// formats always carry the same field set.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace fpl {

using Cell = std::variant<std::string, std::int64_t, std::uint64_t, double, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

std::string format_cell(const Cell& cell);

/// Header line, then one LF-terminated row per entry. Cells must not
/// contain commas.
std::string to_csv(const Table& table);
/// Array of objects keyed by column name.
nlohmann::ordered_json to_json(const Table& table);

}  // namespace fpl
