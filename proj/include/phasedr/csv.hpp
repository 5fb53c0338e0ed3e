#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace phasedr {

/// Shortest decimal text that round-trips the double exactly.
std::string fmt_double(double v);

/// Comma-separated rows under a '#' comment line and a header row.
/// A null stream turns every call into a no-op.
class CsvWriter {
 public:
  CsvWriter(std::ostream* os, const std::string& comment, const std::vector<std::string>& columns);

  /// Cells are written verbatim; the count must match the header.
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream* os_;
  std::size_t columns_;
};

}  // namespace phasedr
