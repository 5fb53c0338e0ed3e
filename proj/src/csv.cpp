#include "phasedr/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "phasedr/errors.hpp"

namespace phasedr {

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream* os, const std::string& comment,
                     const std::vector<std::string>& columns)
    : os_(os), columns_(columns.size()) {
  if (!os_) return;
  *os_ << "# " << comment << '\n';
  row(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw ConfigError("csv row has the wrong number of cells");
  if (!os_) return;
  for (std::size_t i = 0; i < cells.size(); ++i) *os_ << (i ? "," : "") << cells[i];
  *os_ << '\n';
}

}  // namespace phasedr
