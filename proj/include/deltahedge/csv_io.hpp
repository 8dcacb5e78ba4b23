#pragma once

#include <string>
#include <vector>

namespace deltahedge {

/// Shortest decimal rendering that round-trips the exact double value.
std::string fmt_double(double v);

/// Comma split with no quoting support; the engine's CSV schemas never
/// contain embedded commas.
std::vector<std::string> split_csv_line(const std::string& line);

/// Whole-file CSV with a mandatory header row.
struct CsvFile {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // parallel to line_numbers
  std::vector<int> line_numbers;               // 1-based source line of each row
};

/// Reads `path`, validates the header matches `expected_header` exactly,
/// skips blank lines. Throws DataError naming the file (and line) on failure.
CsvFile read_csv(const std::string& path, const std::vector<std::string>& expected_header);

/// Writes rows with the given header; fields are emitted verbatim.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace deltahedge
