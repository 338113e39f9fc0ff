#ifndef DETBENCH_REPORT_H_
#define DETBENCH_REPORT_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "detbench/calibration.h"
#include "detbench/metrics.h"

namespace detbench {

enum class ReportFormat : std::uint8_t { kDelimited, kAlignedText, kMarkdownTable };

std::string_view to_string(ReportFormat format);
std::optional<ReportFormat> parse_report_format(std::string_view text);
std::string_view file_extension(ReportFormat format);

// Leaderboard view of the axis cells: one row per detector sorted by total
// (descending, ties by lower sigma), one column per axis value.
struct Leaderboard {
  Axis axis = Axis::kDomain;
  std::vector<std::string> columns;
  struct Row {
    std::string detector_id;
    std::vector<std::optional<double>> cells;  // fractions
    double total = 0.0;
    double sigma = 0.0;
  };
  std::vector<Row> rows;
  // Column means over the rows that have the column; total and sigma of the
  // footer are the mean and population deviation of those column means.
  Row footer;
  bool has_footer = false;
};

Leaderboard build_leaderboard(const ResultsTable& table);

// delimited:     the machine-readable results table (see write_results);
//                parse_results() reads it back.
// aligned-text:  fixed-width columns of percentages with one decimal, column
//                maxima marked with '*'.
// markdown-table: the same as a GitHub table with maxima in bold.
// Every format ends with the team ranking when one is given; an empty table
// renders a "no cells" notice.
std::string render_report(const ResultsTable& table, ReportFormat format,
                          std::span<const TeamStanding> ranking = {});

// Results table file: a "# axis=<axis>" line, then tab-separated rows
//   record detector_id domain model decoding attack value sigma support detected
// where record is cell, breakdown, summary or gap and '*' is a wildcard.
// Values are fractions written with round-trip precision.
void write_results(std::ostream& out, const ResultsTable& table);
ResultsTable parse_results(std::istream& in, std::string_view source_name = "results");

// Structured JSON form of the same table plus the thresholds it used.
std::string results_json(const ResultsTable& table,
                         std::span<const CalibratedThreshold> thresholds);

// Percentage with one decimal, rounding half away from zero.
std::string format_percent(double fraction);

}  // namespace detbench

#endif  // DETBENCH_REPORT_H_
