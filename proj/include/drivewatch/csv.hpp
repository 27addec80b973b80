#pragma once

#include <string>
#include <vector>

namespace drivewatch::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Reads a comma-separated file with one header row and numeric cells.
// Throws IoError / ValidationError on missing file or non-numeric cells.
Table read(const std::string& path);

// Writes with shortest round-trip formatting so that read(write(x)) == x
// bit for bit.
void write(const std::string& path, const Table& table);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

}  // namespace drivewatch::csv
