#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "detbench/error.h"
#include "detbench/metrics.h"
#include "detbench/random.h"
#include "detbench/synthetic.h"
#include "support/builders.h"
#include "support/published.h"

namespace detbench {
namespace {

double round1(double percent) { return std::round(percent * 10.0) / 10.0; }

TEST(Tpr, Examples) {
  EXPECT_EQ(tpr(std::vector<double>{0.6, 0.9}, 0.5), 1.0);
  EXPECT_EQ(tpr(std::vector<double>{0.2, 0.8}, 0.5), 0.5);
  EXPECT_EQ(tpr(std::vector<double>{0.5}, 0.5), 0.0);
  EXPECT_THROW(tpr(std::vector<double>{}, 0.5), EvaluationError);
}

TEST(Tpr, MatchesBruteForceCount) {
  SeededRng rng(12);
  std::vector<double> scores(500);
  for (double& s : scores) s = std::floor(rng.unit() * 50.0) / 50.0;  // ties on purpose
  for (int k = 0; k <= 50; ++k) {
    const double t = k / 50.0;
    std::size_t above = 0;
    for (double s : scores) above += s > t ? 1 : 0;
    EXPECT_EQ(tpr(scores, t), static_cast<double>(above) / 500.0);
  }
}

TEST(Summarize, BinocularsDomainRow) {
  std::vector<double> cells{80.7, 76.5, 81.3, 82.8, 76.0, 78.0, 80.1, 76.4};
  auto s = summarize("binoculars", cells);
  EXPECT_EQ(round1(s.total), 79.0);
  EXPECT_EQ(round1(s.sigma), 2.4);
  EXPECT_EQ(s.cell_count, 8u);
}

TEST(Summarize, BinocularsAttackRow) {
  std::vector<double> cells{78.2, 74.3, 37.7, 71.7, 77.1, 80.3, 78.0, 43.5, 73.8, 70.1, 99.1};
  auto s = summarize("binoculars", cells);
  EXPECT_EQ(round1(s.total), 71.3);
  EXPECT_EQ(round1(s.sigma), 16.2);
}

TEST(Summarize, PopulationDeviation) {
  auto s = summarize("x", std::vector<double>{2, 4, 4, 4, 5, 5, 7, 9});
  EXPECT_DOUBLE_EQ(s.total, 5.0);
  EXPECT_DOUBLE_EQ(s.sigma, 2.0);
  auto single = summarize("x", std::vector<double>{0.42});
  EXPECT_DOUBLE_EQ(single.total, 0.42);
  EXPECT_EQ(single.sigma, 0.0);
}

TEST(Rank, PublishedOrderings) {
  const std::pair<const char*, const char*> cases[] = {
      {"published_domain_results.tsv", "published_team_ranking_a.tsv"},
      {"published_attack_results.tsv", "published_team_ranking_b.tsv"}};
  for (const auto& [results, ranking] : cases) {
    auto table = testing::load_published_table(results);
    std::vector<SubmissionResult> submissions;
    std::map<std::string, std::string> team_of;
    for (const auto& row : table.rows) {
      submissions.push_back({row.team + "/" + row.submission, row.total, row.sigma});
      team_of[row.team + "/" + row.submission] = row.team;
    }
    auto expected = testing::load_published_ranking(ranking);
    auto got = rank_teams(submissions, team_of);
    ASSERT_EQ(got.size(), expected.size()) << ranking;
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].team_id, expected[i].team) << ranking << " position " << i + 1;
      EXPECT_EQ(got[i].best_submission_id, expected[i].team + "/" + expected[i].best_submission);
      EXPECT_EQ(got[i].total, expected[i].total);
      EXPECT_EQ(got[i].sigma, expected[i].sigma);
    }
  }
}

TEST(Rank, TieBrokenByLowerSigma) {
  std::vector<SubmissionResult> subs{{"pangram", 97.7, 2.9}, {"leidos-2", 97.7, 2.5},
                                     {"leidos-4", 97.6, 2.4}};
  std::map<std::string, std::string> team_of{
      {"pangram", "Pangram"}, {"leidos-2", "Leidos"}, {"leidos-4", "Leidos"}};
  auto r = rank_teams(subs, team_of);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].team_id, "Leidos");
  EXPECT_EQ(r[0].best_submission_id, "leidos-2");
  EXPECT_EQ(r[1].team_id, "Pangram");
}

TEST(Rank, SingletonAndUnmapped) {
  std::vector<SubmissionResult> one{{"s", 50.0, 1.0}};
  auto r = rank_teams(one, {{"s", "T"}});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0], (TeamStanding{"T", "s", 50.0, 1.0}));
  EXPECT_THROW(rank_teams(one, {}), ConfigError);
}

struct Fixture {
  Corpus corpus;
  std::vector<ScoreRecord> scores;
  std::vector<CalibratedThreshold> thresholds;
};

// Two domains with known thresholds and hand-set machine scores.
Fixture small_fixture() {
  using namespace testing;
  auto hn = human_doc("hn", Domain::kNews);
  auto hw = human_doc("hw", Domain::kWiki);
  auto n1 = machine_doc("n1", hn, Model::kGpt2, Decoding::kGreedy);
  auto n2 = machine_doc("n2", hn, Model::kGpt2, Decoding::kSampling);
  auto w1 = machine_doc("w1", hw, Model::kGpt2, Decoding::kGreedy);
  auto w2 = machine_doc("w2", hw, Model::kGpt2, Decoding::kSampling);
  auto n1h = attacked_doc("n1.h", n1, AttackKind::kHomoglyph);
  auto w1h = attacked_doc("w1.h", w1, AttackKind::kHomoglyph);
  Fixture f;
  f.corpus = Corpus::from_documents({hn, hw, n1, n2, w1, w2, n1h, w1h});
  f.scores = {{"hn", "d", 0.0},  {"hw", "d", 0.0},  {"n1", "d", 0.6},   {"n2", "d", 0.4},
              {"w1", "d", 0.6},  {"w2", "d", 0.9},  {"n1.h", "d", 0.2}, {"w1.h", "d", 0.95}};
  f.thresholds = {{"d", Domain::kNews, 0.5, 0.0, true, 1, 1, ""},
                  {"d", Domain::kWiki, 0.8, 0.0, true, 1, 1, ""}};
  return f;
}

TEST(Evaluate, DomainAxisUsesOwnDomainThreshold) {
  auto f = small_fixture();
  auto table = evaluate(f.corpus, f.scores, f.thresholds, Axis::kDomain);
  ASSERT_EQ(table.cells.size(), 2u);
  // news: n1 0.6 > 0.5, n2 0.4, n1.h 0.2 -> 1/3; wiki: w1 0.6, w2 0.9, w1.h 0.95 vs 0.8 -> 2/3
  for (const auto& cell : table.cells) {
    if (cell.strata.domain == Domain::kNews) {
      EXPECT_EQ(cell.detected, 1u);
      EXPECT_EQ(cell.support, 3u);
    } else {
      EXPECT_EQ(cell.strata.domain, Domain::kWiki);
      EXPECT_EQ(cell.detected, 2u);
      EXPECT_EQ(cell.support, 3u);
    }
  }
  const auto* s = table.summary("d");
  ASSERT_NE(s, nullptr);
  EXPECT_DOUBLE_EQ(s->total, 0.5);
  EXPECT_DOUBLE_EQ(s->sigma, 1.0 / 6.0);
  // Six domains without machine documents are reported as gaps.
  EXPECT_EQ(table.coverage_gaps.at("d").size(), 6u);
  EXPECT_FALSE(table.breakdown.empty());
}

TEST(Evaluate, AttackAxisCoversAttackedDocumentsOnly) {
  auto f = small_fixture();
  auto table = evaluate(f.corpus, f.scores, f.thresholds, Axis::kAttack);
  ASSERT_EQ(table.cells.size(), 1u);
  EXPECT_EQ(table.cells[0].strata.attack, AttackKind::kHomoglyph);
  EXPECT_EQ(table.cells[0].support, 2u);
  EXPECT_EQ(table.cells[0].detected, 1u);
  EXPECT_EQ(table.coverage_gaps.at("d").size(), 10u);
  EXPECT_EQ(axis_values(Axis::kAttack).size(), 11u);
}

TEST(Evaluate, MissingScoreNamesDocument) {
  auto f = small_fixture();
  f.scores.pop_back();
  try {
    evaluate(f.corpus, f.scores, f.thresholds, Axis::kDomain);
    FAIL();
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("w1.h"), std::string::npos) << e.what();
  }
}

TEST(Evaluate, MissingThresholdNamesDomain) {
  auto f = small_fixture();
  f.thresholds.pop_back();
  try {
    evaluate(f.corpus, f.scores, f.thresholds, Axis::kDomain);
    FAIL();
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("wiki"), std::string::npos) << e.what();
  }
}

TEST(Evaluate, SeparableCorpusIsPerfect) {
  SyntheticCorpusOptions options;
  options.humans_per_domain = 40;
  auto corpus = make_synthetic_corpus(options);
  auto scores = separable_scores(corpus, "sep", 3);
  auto thresholds = calibrate(corpus, scores);
  auto table = evaluate(corpus, scores, thresholds, Axis::kDomain);
  ASSERT_EQ(table.cells.size(), 8u);
  for (const auto& cell : table.cells) EXPECT_EQ(cell.tpr, 1.0);
  EXPECT_EQ(table.summary("sep")->total, 1.0);
  EXPECT_EQ(table.summary("sep")->sigma, 0.0);
  EXPECT_TRUE(table.coverage_gaps.empty());
}

}  // namespace
}  // namespace detbench
