#pragma once

// Numeric CSV tables: comma separated, LF line endings, one header row of
// unit-suffixed names, fixed-point floats.

#include "lidarscan/scan_geometry.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace lidarscan {

inline constexpr int kCsvDecimals = 6;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
};

/// Fixed-point text; negative zero prints as zero so output is stable.
std::string format_fixed(double value, int decimals);

/// Per-column decimals; an empty list means kCsvDecimals everywhere.
void write_csv(std::ostream& out, const CsvTable& table, const std::vector<int>& decimals = {});
std::string to_csv(const CsvTable& table, const std::vector<int>& decimals = {});

/// Throws Error{parse_error} naming the line on malformed input.
CsvTable read_csv(std::istream& in);
CsvTable parse_csv(const std::string& text);

/// time_s followed by every channel, in series order.
CsvTable series_table(const TimeSeries& series);

/// t_s, phi_lm_deg, phi_sm_deg, x_m, y_m.
CsvTable scan_table(const std::vector<ScanSample>& samples);
std::vector<ScanSample> scan_samples(const CsvTable& table);

/// Display layout of the scan tables: time with 3 decimals, the rest 2.
std::vector<int> paper_format_decimals();

}  // namespace lidarscan
