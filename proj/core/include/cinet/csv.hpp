#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cinet {

using Cell = std::variant<double, long, std::string>;

// A CSV-bound table with a fixed column schema. Reals print with 6 decimals.
struct ResultTable {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  // Column values as reals; throws ConfigError for unknown or non-numeric columns.
  std::vector<double> column(const std::string& name) const;
};

std::string format_real(double value);
void write_csv(std::ostream& out, const ResultTable& table);
void write_csv(const std::filesystem::path& path, const ResultTable& table);

// Minimal reader for the files this library writes (no quoting).
ResultTable read_csv(const std::filesystem::path& path);

}  // namespace cinet
