#include "wqed/csv.hpp"

#include <cmath>
#include <cstdio>

namespace wqed {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  // Trim to the shortest form that still round-trips, so files stay readable
  // without giving up byte-stable reruns.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, value);
    double parsed = 0.0;
    std::sscanf(shorter, "%lf", &parsed);
    if (parsed == value) return shorter;
  }
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path), path_(path) {
  if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
}

void CsvWriter::comment(const std::string& line) { out_ << "# " << line << "\n"; }

void CsvWriter::header(const std::vector<std::string>& columns) {
  n_columns_ = columns.size();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out_ << ",";
    out_ << columns[i];
  }
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != n_columns_)
    throw std::runtime_error("CsvWriter: row width does not match header in " + path_);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ",";
    out_ << format_double(values[i]);
  }
  out_ << "\n";
}

void CsvWriter::row_mixed(const std::vector<std::string>& cells) {
  if (cells.size() != n_columns_)
    throw std::runtime_error("CsvWriter: row width does not match header in " + path_);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ",";
    out_ << cells[i];
  }
  out_ << "\n";
}

void CsvWriter::close() {
  if (out_.is_open()) {
    out_.close();
    if (!out_) throw std::runtime_error("CsvWriter: failed writing " + path_);
  }
}

}  // namespace wqed
