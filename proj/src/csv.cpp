#include "drivewatch/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "drivewatch/errors.hpp"

namespace drivewatch::csv {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Table read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("'" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  t.header = split_line(line);
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != t.header.size()) {
      throw ValidationError("'" + path + "' line " + std::to_string(lineno) +
                            ": expected " + std::to_string(t.header.size()) +
                            " cells, got " + std::to_string(cells.size()));
    }
    std::vector<double> row(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
      const auto& c = cells[i];
      double v = 0.0;
      const auto res = std::from_chars(c.data(), c.data() + c.size(), v);
      if (res.ec != std::errc() || res.ptr != c.data() + c.size()) {
        throw ValidationError("'" + path + "' line " + std::to_string(lineno) +
                              ": non-numeric cell '" + c + "'");
      }
      row[i] = v;
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write(const std::string& path, const Table& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  for (size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace drivewatch::csv
