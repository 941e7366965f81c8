#pragma once

#include <string>
#include <vector>

#include "tmhd/common.hpp"

namespace tmhd {

/// CSV emission with a fixed header line; numbers printed with 17 significant
/// digits so a parse-back reproduces every double bit-exactly.
void write_report(const std::string& path, const std::vector<std::string>& header,
                  const std::vector<std::vector<Real>>& rows);

std::string format_full_precision(Real v);

/// Parse a report written by write_report (header line + numeric rows).
struct ParsedReport {
  std::vector<std::string> header;
  std::vector<std::vector<Real>> rows;
};
ParsedReport read_report(const std::string& path);

}  // namespace tmhd
