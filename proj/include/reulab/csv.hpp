#pragma once

#include <memory>
#include <string>
#include <vector>

namespace reulab {
namespace csv {

// Formats doubles with enough digits to round-trip exactly.
std::string format_double(double x);

class Writer {
 public:
  explicit Writer(const std::string& path);  // throws on open failure
  ~Writer();
  void write_header(const std::vector<std::string>& cols);
  void write_row(const std::vector<std::string>& cells);
  void write_row_doubles(const std::vector<double>& cells);

 private:
  struct Impl;
  std::string path_;
  std::unique_ptr<Impl> impl_;
  void flush_line(const std::vector<std::string>& cells);
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name; throws when missing.
  std::size_t column(const std::string& name) const;
};

// Reads a comma-separated file with a header row. Ragged rows are reported
// with their line number.
Table read(const std::string& path);

// Parses a cell as double; errors carry the 1-based data row number.
double parse_double(const Table& table, std::size_t row, std::size_t col);

}  // namespace csv
}  // namespace reulab
