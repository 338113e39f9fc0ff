#include "detbench/tsv.h"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "detbench/error.h"

namespace detbench::tsv {

std::string escape(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (char c : field) {
    switch (c) {
      case '\\':
        out += "\\\\";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::string unescape(std::string_view field, std::size_t row) {
  std::string out;
  out.reserve(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] != '\\') {
      out.push_back(field[i]);
      continue;
    }
    if (i + 1 == field.size()) throw ParseError("dangling backslash escape", row);
    switch (field[++i]) {
      case '\\':
        out.push_back('\\');
        break;
      case 't':
        out.push_back('\t');
        break;
      case 'n':
        out.push_back('\n');
        break;
      case 'r':
        out.push_back('\r');
        break;
      default:
        throw ParseError(std::string("unknown escape \\") + field[i], row);
    }
  }
  return out;
}

std::vector<std::string_view> split_raw(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::optional<Row> Reader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    Row row;
    row.line = line_;
    for (std::string_view raw : split_raw(line)) {
      row.fields.push_back(unescape(raw, line_));
    }
    return row;
  }
  return std::nullopt;
}

Table Table::read(std::istream& in, std::string_view source_name) {
  Table table;
  table.source_ = source_name;
  Reader reader(in);
  auto header = reader.next();
  if (!header) throw SchemaError(std::string(source_name) + ": missing header row");
  table.header_ = std::move(header->fields);
  while (auto row = reader.next()) {
    if (row->fields.size() != table.header_.size()) {
      throw ParseError(std::string(source_name) + ": expected " +
                           std::to_string(table.header_.size()) + " fields, found " +
                           std::to_string(row->fields.size()),
                       row->line);
    }
    table.rows_.push_back(std::move(*row));
  }
  return table;
}

std::optional<std::size_t> Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Table::require_column(std::string_view name) const {
  if (auto c = column(name)) return *c;
  throw SchemaError(source_ + ": missing column '" + std::string(name) + "'");
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << '\t';
    out << escape(fields[i]);
  }
  out << '\n';
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, std::size_t row) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (text.empty() || res.ec != std::errc() || res.ptr != last) {
    throw ParseError("not a number: '" + std::string(text) + "'", row);
  }
  return value;
}

std::size_t parse_count(std::string_view text, std::size_t row) {
  std::size_t value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ParseError("not a count: '" + std::string(text) + "'", row);
  }
  return value;
}

}  // namespace detbench::tsv
