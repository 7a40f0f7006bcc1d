#include "polya/table.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace polya {

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void emit_csv(const TableArtifact& table, std::ostream& os) {
  for (const auto& [key, value] : table.meta) os << "# " << key << "=" << value << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : "") << table.columns[i];
  os << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::logic_error("table row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << "\n";
  }
}

void emit_json(const TableArtifact& table, std::ostream& os) {
  nlohmann::json j;
  j["meta"] = table.meta;
  j["columns"] = table.columns;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::logic_error("table row width does not match the header");
    j["rows"].push_back(row);
  }
  os << j.dump(1) << "\n";
}

void emit(const TableArtifact& table, OutputFormat format, std::ostream& os) {
  if (format == OutputFormat::csv)
    emit_csv(table, os);
  else
    emit_json(table, os);
  if (!os) throw std::runtime_error("write failed while emitting table");
}

}  // namespace polya
