#pragma once

// CSV serialization of sweeps. Column order is fixed:
//   t, h_re, h_im, abs_h, C_total, C_L, C_G, C_12, C_13, C_23, C_1_23, C_TG, C_BG, M
// Values carry 17 significant digits. Three-qubit columns are left empty for
// registers of other sizes.

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cohdyn/analysis.hpp"

namespace cohdyn::cli {

inline constexpr std::array<std::string_view, 14> kCsvColumns{
    "t", "h_re", "h_im", "abs_h", "C_total", "C_L", "C_G",
    "C_12", "C_13", "C_23", "C_1_23", "C_TG", "C_BG", "M"};

void write_series_csv(std::ostream& out, const TimeSeries& series);

/// Columns read back from a CSV; empty cells become NaN.
struct SeriesTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  /// Throws ValidationError if the column is missing.
  const std::vector<double>& column(std::string_view name) const;
};

SeriesTable read_series_csv(std::istream& in);

}  // namespace cohdyn::cli
