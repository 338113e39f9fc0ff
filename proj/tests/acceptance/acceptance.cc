// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "detbench/attacks.h"
#include "detbench/calibration.h"
#include "detbench/metrics.h"
#include "detbench/pipeline.h"
#include "detbench/random.h"
#include "detbench/report.h"
#include "detbench/synthetic.h"
#include "detbench/unicode.h"
#include "support/published.h"
#include "support/temp_dir.h"

namespace detbench {
namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, std::string note) {
    if (!ok) pass = false;
    notes.push_back((ok ? "" : "FAILED ") + std::move(note));
  }
  void info(std::string note) { notes.push_back(std::move(note)); }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double round1(double x) { return std::round(x * 10.0) / 10.0; }

// 1. Aggregation fixtures.
Verdict aggregation() {
  Verdict v;
  auto domain = testing::load_published_table("published_domain_results.tsv");
  auto attack = testing::load_published_table("published_attack_results.tsv");
  for (auto [table, expect_total, expect_sigma, label] :
       {std::tuple{&domain, 79.0, 2.4, "per-domain"},
        std::tuple{&attack, 71.3, 16.2, "per-attack"}}) {
    const auto& row = table->row("Binoculars");
    auto s = summarize("Binoculars", row.cells);
    v.check(std::abs(round1(s.total) - expect_total) <= 0.05 &&
                std::abs(round1(s.sigma) - expect_sigma) <= 0.05,
            fmt::format("Binoculars {} {:.1f} ({:.1f}) vs {:.1f} ({:.1f})", label, s.total,
                        s.sigma, expect_total, expect_sigma));
  }

  ResultsTable cells;
  cells.axis = Axis::kDomain;
  for (const auto& row : domain.rows) {
    for (std::size_t c = 0; c < domain.columns.size(); ++c) {
      EvalCell cell;
      cell.detector_id = row.team + "/" + row.submission;
      cell.strata.domain = parse_domain(domain.columns[c]);
      cell.tpr = row.cells[c] / 100.0;
      cells.cells.push_back(cell);
    }
  }
  cells.summaries = summarize_cells(cells.cells);
  const Leaderboard board = build_leaderboard(cells);
  double worst = 0.0;
  for (std::size_t c = 0; c < board.columns.size(); ++c) {
    std::size_t p = 0;
    while (domain.columns[p] != board.columns[c]) ++p;
    worst = std::max(worst, std::abs(board.footer.cells[c].value_or(0.0) * 100.0 -
                                     domain.footer.cells[p]));
  }
  v.check(board.has_footer && board.columns.size() == 8 && worst <= 0.05,
          fmt::format("footer columns max deviation {:.3f}", worst));
  const double sigma_dev = std::abs(board.footer.sigma * 100.0 - domain.footer.sigma);
  v.check(sigma_dev <= 0.05, fmt::format("footer sigma {:.3f} vs {:.1f}",
                                         board.footer.sigma * 100.0, domain.footer.sigma));
  v.info(fmt::format("footer total {:.3f} vs printed {:.1f} (informational)",
                     board.footer.total * 100.0, domain.footer.total));
  return v;
}

// 2. Ranking fixtures.
Verdict ranking() {
  Verdict v;
  const std::pair<const char*, const char*> cases[] = {
      {"published_domain_results.tsv", "published_team_ranking_a.tsv"},
      {"published_attack_results.tsv", "published_team_ranking_b.tsv"}};
  for (const auto& [results, expected_file] : cases) {
    auto table = testing::load_published_table(results);
    std::vector<SubmissionResult> subs;
    std::map<std::string, std::string> team_of;
    for (const auto& row : table.rows) {
      subs.push_back({row.submission, row.total, row.sigma});
      team_of[row.submission] = row.team;
    }
    auto got = rank_teams(subs, team_of);
    auto expected = testing::load_published_ranking(expected_file);
    bool same = got.size() == expected.size();
    for (std::size_t i = 0; same && i < got.size(); ++i) {
      same = got[i].team_id == expected[i].team &&
             got[i].best_submission_id == expected[i].best_submission;
    }
    std::string order;
    for (const auto& t : got) order += (order.empty() ? "" : " > ") + t.team_id;
    v.check(same, fmt::format("{}: {}", expected_file, order));
  }
  return v;
}

// 3. Threshold search against the quantile oracle.
Verdict threshold_oracle() {
  Verdict v;
  const auto start = Clock::now();
  constexpr int kCases = 1000;
  int converged = 0;
  int within_tpr = 0;
  double worst_diff = 0.0;
  int worst_iters = 0;
  std::map<std::string, std::pair<int, int>> by_family;  // converged, total
  for (int i = 0; i < kCases; ++i) {
    SeededRng rng(mix_seed(0xACCE, static_cast<std::uint64_t>(i)));
    const std::size_t n = 100 + rng.below(9901);
    const int family = i % 3;
    auto draw = [&]() {
      switch (family) {
        case 0:
          return rng.normal();
        case 1:
          return rng.unit();
        default:
          return rng.normal() + (rng.below(2) == 0 ? 0.0 : 4.0);
      }
    };
    // Standard deviation of each family, for the machine shift.
    const double sd[] = {1.0, std::sqrt(1.0 / 12.0), std::sqrt(5.0)};
    std::vector<double> human(n), machine(n);
    for (double& s : human) s = draw();
    for (double& s : machine) s = draw() + sd[family];

    const auto search = search_threshold(human);
    const double oracle = quantile_oracle(human, 0.05);
    const double diff = std::abs(tpr(machine, search.threshold) - tpr(machine, oracle));
    worst_diff = std::max(worst_diff, diff);
    worst_iters = std::max(worst_iters, search.iterations);
    if (diff <= 0.02) ++within_tpr;
    const bool ok = search.converged && search.iterations <= 50 &&
                    std::abs(search.achieved_fpr - 0.05) <= 0.0005;
    if (ok) ++converged;
    const char* names[] = {"normal", "uniform", "bimodal"};
    auto& tally = by_family[names[family]];
    tally.first += ok ? 1 : 0;
    tally.second += 1;
  }
  const double elapsed = seconds_since(start);
  v.check(converged >= 950, fmt::format("converged {}/{} (need 950)", converged, kCases));
  v.check(within_tpr == kCases,
          fmt::format("TPR within 0.02 of oracle {}/{}, worst {:.4f}", within_tpr, kCases,
                      worst_diff));
  v.check(elapsed <= 60.0, fmt::format("{:.2f} s", elapsed));
  for (const auto& [name, tally] : by_family) {
    v.info(fmt::format("{} {}/{}", name, tally.first, tally.second));
  }
  v.info(fmt::format("max iterations {}", worst_iters));
  return v;
}

// 4. Budget exactness.
Verdict budget_exactness() {
  Verdict v;
  SeededRng rng(404);
  std::vector<std::string> texts;
  for (int i = 0; i < 1000; ++i) texts.push_back(synthetic_text(rng, 1 + rng.below(8)));
  const AttackContext ctx;
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  std::size_t observed_mismatches = 0;
  for (AttackKind kind : kAllAttackKinds) {
    for (double theta : {default_theta(kind), 0.0, 0.33, 1.0}) {
      for (std::size_t i = 0; i < texts.size(); ++i) {
        const AttackSpec spec{kind, theta, document_seed(kDefaultMasterSeed, std::to_string(i),
                                                         to_string(kind))};
        const AttackResult r = apply_attack(spec, texts[i], ctx);
        ++checked;
        if (r.mutated_sites != budget(theta, r.total_sites) ||
            r.chosen_indices.size() != r.mutated_sites) {
          ++mismatches;
        }
        // Independent count of the edits for the character-level attacks.
        const std::u32string before = unicode::decode_utf8(texts[i]);
        const std::u32string after = unicode::decode_utf8(r.text);
        std::size_t observed = r.mutated_sites;
        if (kind == AttackKind::kHomoglyph || kind == AttackKind::kUpperLowerSwap) {
          observed = 0;
          for (std::size_t k = 0; k < before.size() && k < after.size(); ++k) {
            observed += before[k] != after[k] ? 1 : 0;
          }
          if (before.size() != after.size()) observed = SIZE_MAX;
        } else if (kind == AttackKind::kZeroWidthSpace || kind == AttackKind::kWhitespace) {
          observed = after.size() - before.size();
        }
        if (observed != r.mutated_sites) ++observed_mismatches;
      }
    }
  }
  v.check(mismatches == 0,
          fmt::format("{} attack applications, {} budget mismatches", checked, mismatches));
  v.check(observed_mismatches == 0,
          fmt::format("{} mismatches between reported and observed edits", observed_mismatches));
  return v;
}

std::string random_text(SeededRng& rng) {
  if (rng.below(2) == 0) return synthetic_text(rng, 1 + rng.below(6));
  static const std::u32string alphabet =
      U"abcdefghijklmnopqrstuvwxyz ABCDEFGHIJKLMNOPQRSTUVWXYZ 0123456789 .,;:!?\"'()- \n\t";
  std::u32string out;
  const auto n = rng.below(120);
  for (std::uint64_t k = 0; k < n; ++k) out += alphabet[rng.below(alphabet.size())];
  return unicode::encode_utf8(out);
}

// 5. Normalization round-trips.
Verdict normalization() {
  Verdict v;
  SeededRng rng(505);
  const AttackContext ctx;
  const AttackKind recoverable[] = {AttackKind::kZeroWidthSpace, AttackKind::kHomoglyph,
                                    AttackKind::kWhitespace, AttackKind::kInsertParagraphs};
  const AttackKind lossy[] = {AttackKind::kArticleDeletion, AttackKind::kNumberSwap};
  std::map<AttackKind, std::size_t> failures, lossy_with_sites, recovered;
  for (int i = 0; i < 10000; ++i) {
    const std::string text = random_text(rng);
    const std::string base = normalize(text);
    for (AttackKind kind : recoverable) {
      const AttackSpec spec{kind, 1.0, static_cast<std::uint64_t>(i)};
      if (normalize(apply_attack(spec, text, ctx).text) != base) ++failures[kind];
    }
    for (AttackKind kind : lossy) {
      const auto r = apply_attack(AttackSpec::with_default_theta(kind, i), text, ctx);
      if (r.total_sites == 0) continue;
      ++lossy_with_sites[kind];
      if (normalize(r.text) == base) ++recovered[kind];
    }
  }
  for (AttackKind kind : recoverable) {
    v.check(failures[kind] == 0,
            fmt::format("{}: {} failures in 10000", to_string(kind), failures[kind]));
  }
  for (AttackKind kind : lossy) {
    v.check(lossy_with_sites[kind] > 0 && recovered[kind] == 0,
            fmt::format("{}: recovered {} of {} texts with sites", to_string(kind),
                        recovered[kind], lossy_with_sites[kind]));
  }
  return v;
}

std::vector<std::string> full_run(const std::filesystem::path& root, const Corpus& corpus) {
  std::vector<std::string> files;
  RunConfig attack_config;
  attack_config.subtask = Subtask::kB;
  const AttackRun attacked = run_attack(attack_config, corpus, make_attack_context(attack_config));
  for (const auto& f : write_attack_outputs(attack_config, attacked, root / "attack")) {
    files.push_back("attack/" + f);
  }

  RunConfig config;
  config.subtask = Subtask::kB;
  config.corpus_paths = {root / "attack" / "attacked_corpus.jsonl"};
  DetectorHandle freq;
  freq.detector_id = "frequency";
  freq.kind = DetectorKind::kBuiltinFrequency;
  config.detectors = {freq};
  config.report_formats = {ReportFormat::kAlignedText, ReportFormat::kMarkdownTable,
                           ReportFormat::kDelimited};
  const Corpus reloaded = load_corpus(config.corpus_paths[0]);
  const CalibrationRun calibration = run_calibrate(config, reloaded);
  for (const auto& f : write_calibration_outputs(config, calibration, root / "calibrate")) {
    files.push_back("calibrate/" + f);
  }
  const EvaluationRun evaluation = run_evaluate(config, reloaded);
  for (const auto& f : write_evaluation_outputs(config, evaluation, root / "evaluate")) {
    files.push_back("evaluate/" + f);
  }
  std::ifstream results(root / "evaluate" / "results.tsv");
  const ResultsTable parsed = parse_results(results);
  std::ofstream(root / "report.md") << render_report(parsed, ReportFormat::kMarkdownTable);
  files.push_back("report.md");
  return files;
}

// 6. Determinism of the full pipeline.
Verdict determinism() {
  Verdict v;
  testing::TempDir dir;
  SyntheticCorpusOptions options;
  options.humans_per_domain = 3;
  options.seed = 6;
  const Corpus corpus = make_synthetic_corpus(options);
  const auto first = full_run(dir / "work", corpus);
  std::filesystem::rename(dir / "work", dir / "run1");
  const auto second = full_run(dir / "work", corpus);
  std::filesystem::rename(dir / "work", dir / "run2");
  std::size_t differing = 0;
  for (const auto& name : first) {
    if (testing::read_file(dir / "run1" / name) != testing::read_file(dir / "run2" / name)) {
      ++differing;
      v.info("differs: " + name);
    }
  }
  v.check(first == second && !first.empty() && differing == 0,
          fmt::format("{} files compared, {} differ", first.size(), differing));
  return v;
}

// 7. End-to-end on a separable corpus.
Verdict separable() {
  Verdict v;
  testing::TempDir dir;
  const auto start = Clock::now();
  SyntheticCorpusOptions options;
  options.humans_per_domain = 36;
  options.seed = 7;
  const Corpus corpus = make_synthetic_corpus(options);
  save_corpus(corpus, dir / "corpus.jsonl", CorpusFormat::kRecordLines);
  {
    std::ofstream out(dir / "scores.tsv");
    write_scores(out, separable_scores(corpus, "separable", 7));
  }
  RunConfig config;
  config.subtask = Subtask::kA;
  config.corpus_paths = {dir / "corpus.jsonl"};
  config.detectors = {{"separable", DetectorKind::kScoresFile, dir / "scores.tsv", {}}};
  const Corpus loaded = load_corpus(config.corpus_paths[0]);
  const EvaluationRun run = run_evaluate(config, loaded);
  write_evaluation_outputs(config, run, dir / "out");
  const double elapsed = seconds_since(start);

  std::size_t perfect = 0;
  for (const auto& cell : run.results.cells) perfect += format_percent(cell.tpr) == "100.0";
  double max_fpr = 0.0;
  for (const auto& t : run.calibration.thresholds) max_fpr = std::max(max_fpr, t.achieved_fpr);
  v.check(loaded.size() >= 10000, fmt::format("{} documents", loaded.size()));
  v.check(!run.results.cells.empty() && perfect == run.results.cells.size(),
          fmt::format("{}/{} cells at 100.0", perfect, run.results.cells.size()));
  v.check(run.calibration.thresholds.size() == 8 && max_fpr <= 0.05,
          fmt::format("max achieved FPR {:.4f} over {} domains", max_fpr,
                      run.calibration.thresholds.size()));
  v.check(elapsed < 60.0, fmt::format("{:.2f} s", elapsed));
  return v;
}

}  // namespace
}  // namespace detbench

int main() {
  using detbench::Verdict;
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"aggregation fixtures", detbench::aggregation},
      {"ranking fixtures", detbench::ranking},
      {"threshold search vs oracle", detbench::threshold_oracle},
      {"attack budget exactness", detbench::budget_exactness},
      {"normalization round-trips", detbench::normalization},
      {"pipeline determinism", detbench::determinism},
      {"separable end-to-end", detbench::separable},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Verdict verdict;
    try {
      verdict = run();
    } catch (const std::exception& e) {
      verdict.check(false, std::string("exception: ") + e.what());
    }
    std::string detail;
    for (const auto& note : verdict.notes) detail += (detail.empty() ? "" : "; ") + note;
    fmt::print("criterion {}: {} {}: {}\n", index, verdict.pass ? "PASS" : "FAIL", name, detail);
    std::fflush(stdout);
    if (!verdict.pass) ++failed;
  }
  fmt::print("{} of {} criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
