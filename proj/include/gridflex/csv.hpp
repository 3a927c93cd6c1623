#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gridflex::csv {

// Minimal comma-separated reader: no quoting, '#' comment lines and blank
// lines skipped, surrounding whitespace trimmed from every field.
struct Row {
  std::size_t line = 0;  // 1-based line number in the source file
  std::vector<std::string> fields;
};

struct Table {
  std::string source;
  std::vector<std::string> header;
  std::vector<Row> rows;

  // Index of a named column; throws InputError when absent.
  std::size_t column(std::string_view name) const;
  std::optional<std::size_t> find_column(std::string_view name) const;
};

Table read(std::istream& in, std::string source);
Table read_file(const std::string& path);

// Throws InputError naming the header mismatch when the columns are not
// exactly `expected`, in order.
void require_header(const Table& table, const std::vector<std::string>& expected);

double parse_double(std::string_view field, const std::string& where);
long parse_long(std::string_view field, const std::string& where);

// Shortest representation that parses back to the identical double.
std::string format_double(double value);

std::string where(const Table& table, const Row& row);

}  // namespace gridflex::csv
