#include "cinet/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cinet/errors.hpp"

namespace cinet {

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw ConfigError("table " + name + ": row has " + std::to_string(row.size()) +
                      " cells, schema has " + std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::vector<double> ResultTable::column(const std::string& col) const {
  std::size_t index = columns.size();
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] == col) index = c;
  }
  if (index == columns.size()) throw ConfigError("table " + name + " has no column " + col);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    const Cell& cell = row[index];
    if (const auto* d = std::get_if<double>(&cell)) {
      out.push_back(*d);
    } else if (const auto* l = std::get_if<long>(&cell)) {
      out.push_back(static_cast<double>(*l));
    } else {
      try {
        out.push_back(std::stod(std::get<std::string>(cell)));
      } catch (const std::exception&) {
        throw ConfigError("table " + name + ", column " + col + ": non-numeric cell");
      }
    }
  }
  return out;
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  // Avoid "-0.000000" so mirrored runs compare byte-for-byte.
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

void write_csv(std::ostream& out, const ResultTable& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out << format_real(v);
            } else {
              out << v;
            }
          },
          row[c]);
    }
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const ResultTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  write_csv(out, table);
}

ResultTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  ResultTable table;
  table.name = path.stem().string();
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::stringstream ss(l);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!l.empty() && l.back() == ',') cells.emplace_back();
    return cells;
  };
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto cells = split(line);
    if (header) {
      table.columns = std::move(cells);
      header = false;
      continue;
    }
    std::vector<Cell> row(cells.begin(), cells.end());
    table.add_row(std::move(row));
  }
  if (header) throw ConfigError(path.string() + ": missing header row");
  return table;
}

}  // namespace cinet
