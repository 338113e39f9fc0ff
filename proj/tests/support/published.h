#ifndef DETBENCH_TESTS_PUBLISHED_H_
#define DETBENCH_TESTS_PUBLISHED_H_

// Loaders for the published leaderboard fixtures under tests/fixtures.

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "detbench/tsv.h"

namespace detbench::testing {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(DETBENCH_FIXTURES_DIR) / name;
}

// One leaderboard row: cells in percent, in column order.
struct PublishedRow {
  std::string team;
  std::string submission;
  std::vector<double> cells;
  double total = 0.0;
  double sigma = 0.0;
};

struct PublishedTable {
  std::vector<std::string> columns;
  std::vector<PublishedRow> rows;
  PublishedRow footer;

  const PublishedRow& row(const std::string& submission) const {
    for (const auto& r : rows) {
      if (r.submission == submission) return r;
    }
    throw std::out_of_range("no published row " + submission);
  }
};

inline PublishedTable load_published_table(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("cannot open fixture " + name);
  auto table = tsv::Table::read(in, name);
  const auto& header = table.header();
  PublishedTable out;
  // team, submission, cells..., total, sigma
  out.columns.assign(header.begin() + 2, header.end() - 2);
  for (const auto& row : table.rows()) {
    PublishedRow r;
    r.team = row.fields[0];
    r.submission = row.fields[1];
    for (std::size_t i = 2; i + 2 < row.fields.size(); ++i) {
      r.cells.push_back(tsv::parse_double(row.fields[i]));
    }
    r.total = tsv::parse_double(row.fields[row.fields.size() - 2]);
    r.sigma = tsv::parse_double(row.fields.back());
    if (r.team == "Average Performance") {
      out.footer = r;
    } else {
      out.rows.push_back(r);
    }
  }
  return out;
}

struct PublishedStanding {
  std::string team;
  std::string best_submission;
  double total = 0.0;
  double sigma = 0.0;
};

inline std::vector<PublishedStanding> load_published_ranking(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("cannot open fixture " + name);
  auto table = tsv::Table::read(in, name);
  std::vector<PublishedStanding> out;
  for (const auto& row : table.rows()) {
    out.push_back({row.fields[0], row.fields[1], tsv::parse_double(row.fields[2]),
                   tsv::parse_double(row.fields[3])});
  }
  return out;
}

}  // namespace detbench::testing

#endif  // DETBENCH_TESTS_PUBLISHED_H_
