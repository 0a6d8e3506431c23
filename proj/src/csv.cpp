#include "lidarscan/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace lidarscan {

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(ErrorKind::invalid_argument, "no column '" + name + "'");
}

std::string format_fixed(double value, int decimals) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s = buf;
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

void write_csv(std::ostream& out, const CsvTable& table, const std::vector<int>& decimals) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out << (i ? "," : "") << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const int d = i < decimals.size() ? decimals[i] : kCsvDecimals;
      out << (i ? "," : "") << format_fixed(row[i], d);
    }
    out << '\n';
  }
}

std::string to_csv(const CsvTable& table, const std::vector<int>& decimals) {
  std::ostringstream os;
  write_csv(os, table, decimals);
  return os.str();
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
      const auto comma = s.find(',', start);
      cells.push_back(s.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return cells;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      table.header = split(line);
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != table.header.size()) {
      throw Error(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": expected " +
                                              std::to_string(table.header.size()) + " cells");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      if (c == "nan") {
        row.push_back(std::nan(""));
        continue;
      }
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc() || ptr != c.data() + c.size() || c.empty()) {
        throw Error(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": bad number '" + c + "'");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (line_no == 0) throw Error(ErrorKind::parse_error, "line 1: missing header");
  return table;
}

CsvTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

CsvTable series_table(const TimeSeries& series) {
  CsvTable table;
  table.header.push_back("time_s");
  for (const auto& n : series.names()) table.header.push_back(n);
  table.rows.resize(series.rows());
  for (std::size_t r = 0; r < series.rows(); ++r) {
    auto& row = table.rows[r];
    row.reserve(series.names().size() + 1);
    row.push_back(series.time(r));
    for (std::size_t c = 0; c < series.names().size(); ++c) row.push_back(series.column(c)[r]);
  }
  return table;
}

CsvTable scan_table(const std::vector<ScanSample>& samples) {
  CsvTable table;
  table.header = {"t_s", "phi_lm_deg", "phi_sm_deg", "x_m", "y_m"};
  for (const auto& s : samples) table.rows.push_back({s.t, s.phi_lm, s.phi_sm, s.x, s.y});
  return table;
}

std::vector<ScanSample> scan_samples(const CsvTable& table) {
  const std::size_t t = table.column("t_s");
  const std::size_t lm = table.column("phi_lm_deg");
  const std::size_t sm = table.column("phi_sm_deg");
  const std::size_t x = table.column("x_m");
  const std::size_t y = table.column("y_m");
  std::vector<ScanSample> out;
  for (const auto& r : table.rows) out.push_back({r[t], r[lm], r[sm], r[x], r[y]});
  return out;
}

std::vector<int> paper_format_decimals() { return {3, 2, 2, 2, 2}; }

}  // namespace lidarscan
