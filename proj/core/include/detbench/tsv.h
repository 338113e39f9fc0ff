#ifndef DETBENCH_TSV_H_
#define DETBENCH_TSV_H_

// Tab-separated tables with backslash escapes. Within a field, backslash,
// tab, newline and carriage return are written as \\, \t, \n and \r; no
// other escapes exist. Lines beginning with '#' and empty lines are skipped
// by the reader.

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace detbench::tsv {

std::string escape(std::string_view field);
// Throws ParseError on a dangling or unknown escape.
std::string unescape(std::string_view field, std::size_t row = 0);

std::vector<std::string_view> split_raw(std::string_view line);

struct Row {
  std::size_t line = 0;  // 1-based line number in the source
  std::vector<std::string> fields;
};

// Reads every data row, unescaping fields.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Returns the next non-comment, non-empty row.
  std::optional<Row> next();

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

// A header line followed by data rows with a fixed column count.
class Table {
 public:
  static Table read(std::istream& in, std::string_view source_name);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::optional<std::size_t> column(std::string_view name) const;
  // Throws SchemaError naming the missing column.
  std::size_t require_column(std::string_view name) const;

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::vector<Row> rows_;
};

void write_row(std::ostream& out, const std::vector<std::string>& fields);

// Shortest representation that parses back to the same double.
std::string format_double(double value);
// Throws ParseError for anything but a complete finite or infinite number.
double parse_double(std::string_view text, std::size_t row = 0);
std::size_t parse_count(std::string_view text, std::size_t row = 0);

}  // namespace detbench::tsv

#endif  // DETBENCH_TSV_H_
