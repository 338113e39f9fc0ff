#include "detbench/report.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "detbench/error.h"
#include "detbench/tsv.h"

namespace detbench {

namespace {

constexpr std::string_view kWildcard = "*";

std::string display(Axis axis, const std::string& value) {
  if (axis == Axis::kDomain) {
    if (auto d = parse_domain(value)) return std::string(display_name(*d));
  } else if (auto a = parse_attack(value)) {
    return std::string(display_name(*a));
  }
  return value;
}

template <class T>
std::string component(const std::optional<T>& v) {
  return v ? std::string(to_string(*v)) : std::string(kWildcard);
}

template <class T, class Parse>
std::optional<T> parse_component(const std::string& text, Parse parse, std::string_view field,
                                 std::size_t row) {
  if (text == kWildcard) return std::nullopt;
  auto v = parse(text);
  if (!v) throw ParseError("unknown " + std::string(field) + " '" + text + "'", row);
  return v;
}

// Percentage in tenths, as printed.
long long tenths(double fraction) {
  return std::llround(fraction * 1000.0 + (fraction >= 0 ? 1e-9 : -1e-9));
}

struct Grid {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::vector<bool>> best;
  std::size_t footer_row = static_cast<std::size_t>(-1);
};

Grid leaderboard_grid(const Leaderboard& board) {
  Grid grid;
  grid.header.push_back("Detector");
  for (const std::string& c : board.columns) grid.header.push_back(display(board.axis, c));
  grid.header.push_back("Total (sigma)");

  const std::size_t ncols = board.columns.size();
  std::vector<long long> col_max(ncols + 1, std::numeric_limits<long long>::min());
  for (const Leaderboard::Row& row : board.rows) {
    for (std::size_t c = 0; c < ncols; ++c) {
      if (row.cells[c]) col_max[c] = std::max(col_max[c], tenths(*row.cells[c]));
    }
    col_max[ncols] = std::max(col_max[ncols], tenths(row.total));
  }
  auto add = [&](const Leaderboard::Row& row, bool mark) {
    std::vector<std::string> cells{row.detector_id};
    std::vector<bool> best{false};
    for (std::size_t c = 0; c < ncols; ++c) {
      cells.push_back(row.cells[c] ? format_percent(*row.cells[c]) : "-");
      best.push_back(mark && row.cells[c] && tenths(*row.cells[c]) == col_max[c]);
    }
    cells.push_back(format_percent(row.total) + " (" + format_percent(row.sigma) + ")");
    best.push_back(mark && tenths(row.total) == col_max[ncols]);
    grid.rows.push_back(std::move(cells));
    grid.best.push_back(std::move(best));
  };
  for (const Leaderboard::Row& row : board.rows) add(row, true);
  if (board.has_footer) {
    grid.footer_row = grid.rows.size();
    add(board.footer, false);
  }
  return grid;
}

void render_aligned(std::ostream& out, const Grid& grid) {
  std::vector<std::size_t> width(grid.header.size());
  auto measure = [&](const std::vector<std::string>& cells, const std::vector<bool>* best) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      width[c] = std::max(width[c], cells[c].size() + (best && (*best)[c] ? 1 : 0));
    }
  };
  measure(grid.header, nullptr);
  for (std::size_t r = 0; r < grid.rows.size(); ++r) measure(grid.rows[r], &grid.best[r]);
  auto line = [&](const std::vector<std::string>& cells, const std::vector<bool>* best) {
    std::string text;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      std::string cell = cells[c] + (best && (*best)[c] ? "*" : "");
      if (c > 0) text += "  ";
      text += c == 0 ? fmt::format("{:<{}}", cell, width[c]) : fmt::format("{:>{}}", cell, width[c]);
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << '\n';
  };
  line(grid.header, nullptr);
  std::size_t total = 0;
  for (std::size_t w : width) total += w;
  out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
  for (std::size_t r = 0; r < grid.rows.size(); ++r) {
    if (r == grid.footer_row) out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    line(grid.rows[r], &grid.best[r]);
  }
}

void render_markdown(std::ostream& out, const Grid& grid) {
  auto line = [&](const std::vector<std::string>& cells, const std::vector<bool>* best) {
    out << '|';
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const bool bold = best && (*best)[c];
      out << ' ' << (bold ? "**" : "") << cells[c] << (bold ? "**" : "") << " |";
    }
    out << '\n';
  };
  line(grid.header, nullptr);
  out << '|';
  for (std::size_t c = 0; c < grid.header.size(); ++c) out << (c == 0 ? " --- |" : " ---: |");
  out << '\n';
  for (std::size_t r = 0; r < grid.rows.size(); ++r) line(grid.rows[r], &grid.best[r]);
}

void render_gaps(std::ostream& out, const ResultsTable& table, bool markdown) {
  if (table.coverage_gaps.empty()) return;
  out << '\n' << (markdown ? "**Coverage gaps**" : "Coverage gaps (no machine documents):") << '\n';
  for (const auto& [detector, values] : table.coverage_gaps) {
    std::string list;
    for (const std::string& v : values) list += (list.empty() ? "" : ", ") + v;
    out << (markdown ? "- " : "  ") << detector << ": " << list << '\n';
  }
}

void render_ranking(std::ostream& out, std::span<const TeamStanding> ranking, ReportFormat format) {
  if (ranking.empty()) return;
  if (format == ReportFormat::kDelimited) {
    out << "# ranking\n";
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      const TeamStanding& t = ranking[i];
      out << "# " << i + 1 << '\t' << tsv::escape(t.team_id) << '\t'
          << tsv::escape(t.best_submission_id) << '\t' << tsv::format_double(t.total) << '\t'
          << tsv::format_double(t.sigma) << '\n';
    }
    return;
  }
  Grid grid;
  grid.header = {"Rank", "Team", "Best submission", "Total (sigma)"};
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    const TeamStanding& t = ranking[i];
    grid.rows.push_back({std::to_string(i + 1), t.team_id, t.best_submission_id,
                         format_percent(t.total) + " (" + format_percent(t.sigma) + ")"});
    grid.best.emplace_back(4, false);
  }
  out << '\n' << (format == ReportFormat::kMarkdownTable ? "**Team ranking**\n\n" : "Team ranking\n");
  if (format == ReportFormat::kMarkdownTable) {
    render_markdown(out, grid);
  } else {
    render_aligned(out, grid);
  }
}

}  // namespace

std::string_view to_string(ReportFormat format) {
  switch (format) {
    case ReportFormat::kDelimited:
      return "delimited";
    case ReportFormat::kAlignedText:
      return "aligned-text";
    case ReportFormat::kMarkdownTable:
      return "markdown-table";
  }
  return "delimited";
}

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  for (ReportFormat f : {ReportFormat::kDelimited, ReportFormat::kAlignedText,
                         ReportFormat::kMarkdownTable}) {
    if (to_string(f) == text) return f;
  }
  return std::nullopt;
}

std::string_view file_extension(ReportFormat format) {
  switch (format) {
    case ReportFormat::kDelimited:
      return ".tsv";
    case ReportFormat::kAlignedText:
      return ".txt";
    case ReportFormat::kMarkdownTable:
      return ".md";
  }
  return ".txt";
}

std::string format_percent(double fraction) {
  const long long t = tenths(fraction);
  const long long whole = t / 10;
  const long long frac = std::llabs(t % 10);
  return fmt::format("{}{}.{}", t < 0 && whole == 0 ? "-" : "", whole, frac);
}

Leaderboard build_leaderboard(const ResultsTable& table) {
  Leaderboard board;
  board.axis = table.axis;
  std::vector<bool> used;
  const std::vector<std::string> all = axis_values(table.axis);
  used.assign(all.size(), false);
  for (const EvalCell& cell : table.cells) {
    const std::string v = axis_value(cell.strata, table.axis);
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (all[i] == v) used[i] = true;
    }
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (used[i]) board.columns.push_back(all[i]);
  }

  for (const DetectorSummary& s : table.summaries) {
    Leaderboard::Row row;
    row.detector_id = s.detector_id;
    row.total = s.total;
    row.sigma = s.sigma;
    row.cells.assign(board.columns.size(), std::nullopt);
    for (const EvalCell& cell : table.cells) {
      if (cell.detector_id != s.detector_id) continue;
      const std::string v = axis_value(cell.strata, table.axis);
      for (std::size_t c = 0; c < board.columns.size(); ++c) {
        if (board.columns[c] == v) row.cells[c] = cell.tpr;
      }
    }
    board.rows.push_back(std::move(row));
  }
  std::stable_sort(board.rows.begin(), board.rows.end(),
                   [](const Leaderboard::Row& a, const Leaderboard::Row& b) {
                     return std::tuple(-a.total, a.sigma, a.detector_id) <
                            std::tuple(-b.total, b.sigma, b.detector_id);
                   });

  if (!board.rows.empty()) {
    board.has_footer = true;
    board.footer.detector_id = "Average Performance";
    std::vector<double> means;
    for (std::size_t c = 0; c < board.columns.size(); ++c) {
      double sum = 0.0;
      std::size_t n = 0;
      for (const Leaderboard::Row& row : board.rows) {
        if (row.cells[c]) {
          sum += *row.cells[c];
          ++n;
        }
      }
      board.footer.cells.push_back(sum / static_cast<double>(n));
      means.push_back(sum / static_cast<double>(n));
    }
    const DetectorSummary s = summarize(board.footer.detector_id, means);
    board.footer.total = s.total;
    board.footer.sigma = s.sigma;
  }
  return board;
}

std::string render_report(const ResultsTable& table, ReportFormat format,
                          std::span<const TeamStanding> ranking) {
  std::ostringstream out;
  if (format == ReportFormat::kDelimited) {
    write_results(out, table);
    render_ranking(out, ranking, format);
    return out.str();
  }
  const bool markdown = format == ReportFormat::kMarkdownTable;
  out << (markdown ? "### " : "") << "TPR@FPR=5% by " << to_string(table.axis) << '\n';
  if (markdown) out << '\n';
  if (table.cells.empty()) {
    out << "(no cells: no machine documents fall on the evaluation axis)\n";
  } else {
    const Grid grid = leaderboard_grid(build_leaderboard(table));
    if (markdown) {
      render_markdown(out, grid);
    } else {
      render_aligned(out, grid);
    }
  }
  render_gaps(out, table, markdown);
  render_ranking(out, ranking, format);
  return out.str();
}

void write_results(std::ostream& out, const ResultsTable& table) {
  out << "# axis=" << to_string(table.axis) << '\n';
  tsv::write_row(out, {"record", "detector_id", "domain", "model", "decoding", "attack", "value",
                       "sigma", "support", "detected"});
  auto cell_row = [&](std::string_view record, const EvalCell& cell) {
    tsv::write_row(out, {std::string(record), cell.detector_id, component(cell.strata.domain),
                         component(cell.strata.model), component(cell.strata.decoding),
                         component(cell.strata.attack), tsv::format_double(cell.tpr), "",
                         std::to_string(cell.support), std::to_string(cell.detected)});
  };
  for (const EvalCell& cell : table.cells) cell_row("cell", cell);
  for (const EvalCell& cell : table.breakdown) cell_row("breakdown", cell);
  for (const DetectorSummary& s : table.summaries) {
    tsv::write_row(out, {"summary", s.detector_id, "*", "*", "*", "*", tsv::format_double(s.total),
                         tsv::format_double(s.sigma), std::to_string(s.cell_count), ""});
  }
  for (const auto& [detector, values] : table.coverage_gaps) {
    for (const std::string& v : values) {
      const bool domain = table.axis == Axis::kDomain;
      tsv::write_row(out, {"gap", detector, domain ? v : "*", "*", "*", domain ? "*" : v, "", "",
                           "0", "0"});
    }
  }
}

ResultsTable parse_results(std::istream& in, std::string_view source_name) {
  std::string first;
  if (!std::getline(in, first) || !first.starts_with("# axis=")) {
    throw ParseError(std::string(source_name) + ": missing '# axis=' line", 1);
  }
  auto axis = parse_axis(first.substr(7));
  if (!axis) throw ParseError(std::string(source_name) + ": unknown axis", 1);
  ResultsTable table;
  table.axis = *axis;

  const tsv::Table rows = tsv::Table::read(in, source_name);
  const std::size_t record = rows.require_column("record");
  const std::size_t detector = rows.require_column("detector_id");
  const std::size_t domain = rows.require_column("domain");
  const std::size_t model = rows.require_column("model");
  const std::size_t decoding = rows.require_column("decoding");
  const std::size_t attack = rows.require_column("attack");
  const std::size_t value = rows.require_column("value");
  const std::size_t sigma = rows.require_column("sigma");
  const std::size_t support = rows.require_column("support");
  const std::size_t detected = rows.require_column("detected");
  for (const tsv::Row& row : rows.rows()) {
    const std::size_t line = row.line + 1;
    const std::string& kind = row.fields[record];
    const std::string& id = row.fields[detector];
    if (kind == "cell" || kind == "breakdown") {
      EvalCell cell;
      cell.detector_id = id;
      cell.strata.domain = parse_component<Domain>(row.fields[domain], parse_domain, "domain", line);
      cell.strata.model = parse_component<Model>(row.fields[model], parse_model, "model", line);
      cell.strata.decoding =
          parse_component<Decoding>(row.fields[decoding], parse_decoding, "decoding", line);
      cell.strata.attack = parse_component<AttackKind>(row.fields[attack], parse_attack, "attack", line);
      cell.tpr = tsv::parse_double(row.fields[value], line);
      cell.support = tsv::parse_count(row.fields[support], line);
      cell.detected = tsv::parse_count(row.fields[detected], line);
      if (cell.detected > cell.support || !(cell.tpr >= 0.0 && cell.tpr <= 1.0)) {
        throw ParseError("inconsistent cell values", line);
      }
      (kind == "cell" ? table.cells : table.breakdown).push_back(std::move(cell));
    } else if (kind == "summary") {
      DetectorSummary s;
      s.detector_id = id;
      s.total = tsv::parse_double(row.fields[value], line);
      s.sigma = tsv::parse_double(row.fields[sigma], line);
      s.cell_count = tsv::parse_count(row.fields[support], line);
      table.summaries.push_back(std::move(s));
    } else if (kind == "gap") {
      const std::string& v = table.axis == Axis::kDomain ? row.fields[domain] : row.fields[attack];
      if (v == kWildcard) throw ParseError("gap row without an axis value", line);
      table.coverage_gaps[id].push_back(v);
    } else {
      throw ParseError("unknown record type '" + kind + "'", line);
    }
  }
  return table;
}

std::string results_json(const ResultsTable& table,
                         std::span<const CalibratedThreshold> thresholds) {
  using nlohmann::ordered_json;
  auto strata_json = [](const Strata& s) {
    ordered_json j;
    auto put = [&](const char* key, const auto& v) {
      j[key] = v ? ordered_json(std::string(to_string(*v))) : ordered_json(nullptr);
    };
    put("domain", s.domain);
    put("model", s.model);
    put("decoding", s.decoding);
    put("attack", s.attack);
    return j;
  };
  auto cells_json = [&](const std::vector<EvalCell>& cells) {
    ordered_json arr = ordered_json::array();
    for (const EvalCell& c : cells) {
      ordered_json j;
      j["detector_id"] = c.detector_id;
      j["strata"] = strata_json(c.strata);
      j["tpr"] = c.tpr;
      j["support"] = c.support;
      j["detected"] = c.detected;
      arr.push_back(std::move(j));
    }
    return arr;
  };
  ordered_json root;
  root["axis"] = std::string(to_string(table.axis));
  root["cells"] = cells_json(table.cells);
  root["breakdown"] = cells_json(table.breakdown);
  root["summaries"] = ordered_json::array();
  for (const DetectorSummary& s : table.summaries) {
    root["summaries"].push_back(
        {{"detector_id", s.detector_id}, {"total", s.total}, {"sigma", s.sigma}, {"cells", s.cell_count}});
  }
  root["coverage_gaps"] = ordered_json::object();
  for (const auto& [detector, values] : table.coverage_gaps) root["coverage_gaps"][detector] = values;
  root["thresholds"] = ordered_json::array();
  for (const CalibratedThreshold& t : thresholds) {
    root["thresholds"].push_back({{"detector_id", t.detector_id},
                                  {"domain", std::string(to_string(t.domain))},
                                  {"threshold", t.value},
                                  {"achieved_fpr", t.achieved_fpr},
                                  {"converged", t.converged},
                                  {"iterations", t.iterations_used},
                                  {"human_count", t.human_count},
                                  {"warning", t.warning}});
  }
  return root.dump(2) + "\n";
}

}  // namespace detbench
