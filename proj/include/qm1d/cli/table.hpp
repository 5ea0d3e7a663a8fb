#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "qm1d/cli/scenario.hpp"

namespace qm1d::cli {

/// Empty, real, integer or text cell.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

/// 17 significant digits (%.17g), which parses back to the same double.
/// Non-finite values print as nan, inf and -inf.
std::string format_number(double value);

/// Header line, then one line per row. Empty cells are left blank.
void write_csv(const Table& table, std::ostream& out);
/// {"columns": [...], "rows": [[...], ...]} with empty and non-finite
/// cells as null.
void write_json(const Table& table, std::ostream& out);
void write_table(const Table& table, Format format, std::ostream& out);

}  // namespace qm1d::cli
