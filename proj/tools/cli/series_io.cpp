#include "cli/series_io.hpp"

#include "cohdyn/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace cohdyn::cli {

void write_series_csv(std::ostream& out, const TimeSeries& series) {
  for (std::size_t c = 0; c < kCsvColumns.size(); ++c) out << (c ? "," : "") << kCsvColumns[c];
  out << '\n';
  out << std::setprecision(17);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Complex h = series.h_values[k];
    const CoherenceRecord& r = series.records[k];
    out << series.times[k] << ',' << h.real() << ',' << h.imag() << ',' << std::abs(h) << ','
        << r.total << ',' << r.local << ',' << r.global;
    if (r.tri) {
      const auto& t = *r.tri;
      out << ',' << t.c12 << ',' << t.c13 << ',' << t.c23 << ',' << t.c1_23 << ',' << t.tg << ','
          << t.bg << ',' << t.monogamy;
    } else {
      out << ",,,,,,,";
    }
    out << '\n';
  }
}

const std::vector<double>& SeriesTable::column(std::string_view name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == name) return columns[c];
  }
  throw ValidationError("CSV has no column '" + std::string(name) + "'");
}

SeriesTable read_series_csv(std::istream& in) {
  SeriesTable table;
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("CSV input is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) table.header.push_back(cell);
  }
  if (table.header.empty() || table.header.front() != "t") {
    throw ValidationError("CSV header must start with column 't'");
  }
  table.columns.resize(table.header.size());

  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cells.size() != table.header.size()) {
      throw ValidationError("CSV line " + std::to_string(line_no) + ": expected " +
                            std::to_string(table.header.size()) + " cells");
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v = std::numeric_limits<double>::quiet_NaN();
      if (!cells[c].empty()) {
        // strtod rather than stod: subnormal values must parse, not throw.
        char* end = nullptr;
        v = std::strtod(cells[c].c_str(), &end);
        if (end != cells[c].c_str() + cells[c].size()) {
          throw ValidationError("CSV line " + std::to_string(line_no) + ": bad number '" + cells[c] + "'");
        }
      }
      table.columns[c].push_back(v);
    }
  }
  return table;
}

}  // namespace cohdyn::cli
