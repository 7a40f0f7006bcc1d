#ifndef POLYA_TABLE_HPP
#define POLYA_TABLE_HPP

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace polya {

/// Rectangular numeric table with a metadata header; the exchange format of
/// every CLI subcommand.
struct TableArtifact {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::map<std::string, std::string> meta;  // parameters, seed, version
};

enum class OutputFormat { csv, json };

/// CSV: '#' metadata comment lines, header row, 17 significant digits,
/// '.' decimal separator, '\n' line endings.
void emit_csv(const TableArtifact& table, std::ostream& os);

/// JSON object {"meta": {...}, "columns": [...], "rows": [[...]]}; numbers
/// round-trip exactly.
void emit_json(const TableArtifact& table, std::ostream& os);

void emit(const TableArtifact& table, OutputFormat format, std::ostream& os);

}  // namespace polya

#endif
