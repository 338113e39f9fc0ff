#include <gtest/gtest.h>

#include <sstream>

#include "detbench/report.h"
#include "detbench/synthetic.h"
#include "support/published.h"

namespace detbench {
namespace {

ResultsTable table_from_published(const testing::PublishedTable& published, Axis axis) {
  ResultsTable table;
  table.axis = axis;
  for (const auto& row : published.rows) {
    for (std::size_t c = 0; c < published.columns.size(); ++c) {
      EvalCell cell;
      cell.detector_id = row.team + "/" + row.submission;
      if (axis == Axis::kDomain) {
        cell.strata.domain = parse_domain(published.columns[c]);
      } else {
        cell.strata.attack = parse_attack(published.columns[c]);
      }
      cell.tpr = row.cells[c] / 100.0;
      cell.support = 1000;
      cell.detected = static_cast<std::size_t>(row.cells[c] * 10.0 + 0.5);
      table.cells.push_back(cell);
    }
  }
  table.summaries = summarize_cells(table.cells);
  return table;
}

TEST(FormatPercent, RoundsHalfAwayFromZero) {
  EXPECT_EQ(format_percent(1.0), "100.0");
  EXPECT_EQ(format_percent(0.0), "0.0");
  EXPECT_EQ(format_percent(0.12345), "12.3");
  EXPECT_EQ(format_percent(0.00025), "0.0");
  EXPECT_EQ(format_percent(0.00050), "0.1");
  EXPECT_EQ(format_percent(0.79025), "79.0");
}

TEST(Leaderboard, DomainFooterMatchesPublished) {
  auto published = testing::load_published_table("published_domain_results.tsv");
  ASSERT_EQ(published.columns.size(), 8u);
  auto board = build_leaderboard(table_from_published(published, Axis::kDomain));
  ASSERT_TRUE(board.has_footer);
  ASSERT_EQ(board.columns.size(), 8u);
  for (std::size_t c = 0; c < board.columns.size(); ++c) {
    // Board columns follow the axis order; find the published column.
    std::size_t p = 0;
    while (published.columns[p] != board.columns[c]) ++p;
    ASSERT_TRUE(board.footer.cells[c].has_value());
    EXPECT_NEAR(*board.footer.cells[c] * 100.0, published.footer.cells[p], 0.05)
        << board.columns[c];
  }
  EXPECT_NEAR(board.footer.sigma * 100.0, published.footer.sigma, 0.05);
}

TEST(Leaderboard, RowsSortedByTotal) {
  auto published = testing::load_published_table("published_domain_results.tsv");
  auto board = build_leaderboard(table_from_published(published, Axis::kDomain));
  ASSERT_EQ(board.rows.size(), published.rows.size());
  for (std::size_t i = 1; i < board.rows.size(); ++i) {
    EXPECT_GE(board.rows[i - 1].total, board.rows[i].total);
  }
  EXPECT_EQ(board.rows.front().detector_id, "Leidos/Leidos v1.0.3");
}

TEST(Render, BinocularsRowText) {
  auto published = testing::load_published_table("published_domain_results.tsv");
  auto text = render_report(table_from_published(published, Axis::kDomain),
                            ReportFormat::kAlignedText);
  EXPECT_NE(text.find("79.0 (2.4)"), std::string::npos);
  EXPECT_NE(text.find("Average Performance"), std::string::npos);
  auto md = render_report(table_from_published(published, Axis::kDomain),
                          ReportFormat::kMarkdownTable);
  EXPECT_NE(md.find("**100.0**"), std::string::npos);  // recipes column maximum
}

TEST(Render, EmptyTableHasNotice) {
  ResultsTable empty;
  for (auto format : {ReportFormat::kAlignedText, ReportFormat::kMarkdownTable}) {
    EXPECT_NE(render_report(empty, format).find("no cells"), std::string::npos);
  }
}

TEST(Render, RankingAppendix) {
  auto published = testing::load_published_table("published_domain_results.tsv");
  std::vector<TeamStanding> ranking{{"Leidos", "Leidos/Leidos v1.0.3", 99.4, 0.6}};
  auto text = render_report(table_from_published(published, Axis::kDomain),
                            ReportFormat::kAlignedText, ranking);
  EXPECT_NE(text.find("Leidos v1.0.3"), std::string::npos);
  auto delimited = render_report(table_from_published(published, Axis::kDomain),
                                 ReportFormat::kDelimited, ranking);
  std::istringstream in(delimited);
  EXPECT_NO_THROW(parse_results(in));
}

TEST(Results, DelimitedRoundTripIsStable) {
  SyntheticCorpusOptions options;
  options.humans_per_domain = 25;
  auto corpus = make_synthetic_corpus(options);
  auto scores = separable_scores(corpus, "sep", 5);
  auto thresholds = calibrate(corpus, scores);
  auto table = evaluate(corpus, scores, thresholds, Axis::kDomain);
  table.coverage_gaps["sep"] = {"phantom"};
  const std::string first = render_report(table, ReportFormat::kDelimited);
  std::istringstream in(first);
  const ResultsTable parsed = parse_results(in);
  EXPECT_EQ(parsed.cells, table.cells);
  EXPECT_EQ(parsed.breakdown, table.breakdown);
  EXPECT_EQ(parsed.summaries, table.summaries);
  EXPECT_EQ(parsed.coverage_gaps, table.coverage_gaps);
  EXPECT_EQ(render_report(parsed, ReportFormat::kDelimited), first);
  EXPECT_EQ(render_report(parsed, ReportFormat::kAlignedText),
            render_report(table, ReportFormat::kAlignedText));
}

TEST(Results, MalformedFileRejected) {
  std::istringstream no_axis("cell\tx\tnews\t*\t*\t*\t1\t0\t1\t1\n");
  EXPECT_ANY_THROW(parse_results(no_axis));
  std::istringstream bad_record("# axis=domain\nwat\tx\tnews\t*\t*\t*\t1\t0\t1\t1\n");
  EXPECT_ANY_THROW(parse_results(bad_record));
}

TEST(Results, JsonCarriesThresholds) {
  ResultsTable table;
  std::vector<CalibratedThreshold> thresholds{{"x", Domain::kNews, 0.5, 0.05, true, 3, 100, ""}};
  auto json = results_json(table, thresholds);
  EXPECT_NE(json.find("\"thresholds\""), std::string::npos);
  EXPECT_NE(json.find("\"news\""), std::string::npos);
}

}  // namespace
}  // namespace detbench
