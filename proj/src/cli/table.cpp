#include "qm1d/cli/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qm1d::cli {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width differs from column count");
  rows.push_back(std::move(row));
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

namespace {

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string json_text(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

struct CsvCell {
  std::string operator()(std::monostate) const { return ""; }
  std::string operator()(double v) const { return format_number(v); }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(const std::string& s) const { return csv_text(s); }
};

struct JsonCell {
  std::string operator()(std::monostate) const { return "null"; }
  std::string operator()(double v) const { return std::isfinite(v) ? format_number(v) : "null"; }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(const std::string& s) const { return json_text(s); }
};

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << csv_text(table.columns[c]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << std::visit(CsvCell{}, row[c]);
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  out << "{\"columns\":[";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << json_text(table.columns[c]);
  }
  out << "],\"rows\":[";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? ",\n" : "\n") << '[';
    const auto& row = table.rows[r];
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << std::visit(JsonCell{}, row[c]);
    out << ']';
  }
  out << (table.rows.empty() ? "]}\n" : "\n]}\n");
}

void write_table(const Table& table, Format format, std::ostream& out) {
  if (format == Format::csv) {
    write_csv(table, out);
  } else {
    write_json(table, out);
  }
}

}  // namespace qm1d::cli
