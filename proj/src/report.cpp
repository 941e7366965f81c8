#include "tmhd/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tmhd/snapshot.hpp"

namespace tmhd {

std::string format_full_precision(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_report(const std::string& path, const std::vector<std::string>& header,
                  const std::vector<std::vector<Real>>& rows) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("report: cannot open for writing: " + path);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) os << ',';
    os << header[i];
  }
  os << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw IoError("report: row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_full_precision(row[i]);
    }
    os << '\n';
  }
  if (!os) throw IoError("report: write failure: " + path);
}

ParsedReport read_report(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("report: cannot open: " + path);
  ParsedReport out;
  std::string line;
  if (!std::getline(is, line)) throw IoError("report: empty file: " + path);
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) out.header.push_back(cell);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<Real> row;
    std::stringstream rs(line);
    while (std::getline(rs, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() != out.header.size())
      throw IoError("report: malformed row in " + path);
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace tmhd
