#include "reulab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace reulab {
namespace csv {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

struct Writer::Impl {
  std::ofstream out;
};

Writer::Writer(const std::string& path) : path_(path), impl_(new Impl) {
  impl_->out.open(path_, std::ios::trunc);
  if (!impl_->out) throw std::runtime_error("csv: cannot open " + path_ + " for writing");
}

Writer::~Writer() = default;

void Writer::flush_line(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) impl_->out << ',';
    impl_->out << cells[i];
  }
  impl_->out << '\n';
}

void Writer::write_header(const std::vector<std::string>& cols) { flush_line(cols); }

void Writer::write_row(const std::vector<std::string>& cells) { flush_line(cells); }

void Writer::write_row_doubles(const std::vector<double>& cells) {
  std::vector<std::string> s;
  s.reserve(cells.size());
  for (double x : cells) s.push_back(format_double(x));
  flush_line(s);
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::runtime_error("csv: missing column '" + name + "'");
}

Table read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open " + path);
  Table table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (lineno == 1) {
      table.header = std::move(cells);
    } else {
      if (cells.size() != table.header.size()) {
        throw std::runtime_error("csv: row at line " + std::to_string(lineno) + " has " +
                                 std::to_string(cells.size()) + " cells, expected " +
                                 std::to_string(table.header.size()));
      }
      table.rows.push_back(std::move(cells));
    }
  }
  if (table.header.empty()) throw std::runtime_error("csv: " + path + " is empty");
  return table;
}

double parse_double(const Table& table, std::size_t row, std::size_t col) {
  const std::string& cell = table.rows[row][col];
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("csv: bad number '" + cell + "' at data row " +
                             std::to_string(row + 1));
  }
}

}  // namespace csv
}  // namespace reulab
