#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wqed {

// Shortest representation that round-trips a double exactly ("%.17g" trimmed
// by the printf g conversion). Used for every numeric cell so that reruns of
// the same configuration are byte-identical.
std::string format_double(double value);

// Plain CSV with "# key=value" comment lines above the header row. Keeps no
// timestamps; everything written is a pure function of the run parameters.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void comment(const std::string& line);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  void row_mixed(const std::vector<std::string>& cells);
  void close();

 private:
  std::ofstream out_;
  std::string path_;
  std::size_t n_columns_ = 0;
};

}  // namespace wqed
