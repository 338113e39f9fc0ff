#ifndef DETBENCH_METRICS_H_
#define DETBENCH_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "detbench/calibration.h"
#include "detbench/corpus.h"
#include "detbench/taxonomy.h"

namespace detbench {

enum class Axis : std::uint8_t { kDomain, kAttack };

std::string_view to_string(Axis axis);
std::optional<Axis> parse_axis(std::string_view text);

// Stratum of an evaluation cell; nullopt components are wildcards.
struct Strata {
  std::optional<Domain> domain;
  std::optional<Model> model;
  std::optional<Decoding> decoding;
  std::optional<AttackKind> attack;

  auto tie() const { return std::tuple(domain, model, decoding, attack); }
  friend bool operator<(const Strata& a, const Strata& b) {
    return a.tie() < b.tie();
  }
  friend bool operator==(const Strata&, const Strata&) = default;
};

struct EvalCell {
  std::string detector_id;
  Strata strata;
  double tpr = 0.0;
  std::size_t support = 0;   // machine documents in the cell
  std::size_t detected = 0;  // of which scored above threshold

  friend bool operator==(const EvalCell&, const EvalCell&) = default;
};

struct DetectorSummary {
  std::string detector_id;
  double total = 0.0;  // mean of the detector's axis-cell TPRs
  double sigma = 0.0;  // population standard deviation of the same
  std::size_t cell_count = 0;

  friend bool operator==(const DetectorSummary&, const DetectorSummary&) = default;
};

struct ResultsTable {
  Axis axis = Axis::kDomain;
  // One cell per (detector, axis value) with at least one machine document.
  std::vector<EvalCell> cells;
  // Finer cells per (detector, domain, model, decoding, attack).
  std::vector<EvalCell> breakdown;
  std::vector<DetectorSummary> summaries;
  // Axis values without machine documents, per detector.
  std::map<std::string, std::vector<std::string>> coverage_gaps;

  const DetectorSummary* summary(std::string_view detector_id) const;
};

// Fraction of scores strictly above threshold. Throws EvaluationError on an
// empty list.
double tpr(std::span<const double> machine_scores, double threshold);

// Mean and population standard deviation of `values`.
DetectorSummary summarize(std::string detector_id, std::span<const double> values);
// Summaries of the axis cells, one per detector in first-seen order.
std::vector<DetectorSummary> summarize_cells(std::span<const EvalCell> cells);

// Axis values that evaluate() reports on. The attack axis covers the
// eleven attacks; unattacked documents only appear in the breakdown.
std::vector<std::string> axis_values(Axis axis);
std::string axis_value(const Strata& strata, Axis axis);

struct EvaluateOptions {
  bool breakdown = true;
};

// Judges every machine document in `view` against its own (detector,
// domain) threshold and aggregates along `axis`. Throws EvaluationError
// naming the document when a score is missing and naming the domain when a
// threshold is missing.
ResultsTable evaluate(const Corpus& view, std::span<const ScoreRecord> scores,
                      std::span<const CalibratedThreshold> thresholds, Axis axis,
                      const EvaluateOptions& options = {});

struct SubmissionResult {
  std::string submission_id;
  double total = 0.0;
  double sigma = 0.0;
};

struct TeamStanding {
  std::string team_id;
  std::string best_submission_id;
  double total = 0.0;
  double sigma = 0.0;

  friend bool operator==(const TeamStanding&, const TeamStanding&) = default;
};

// Each team is represented by its best submission (highest total, then
// lowest sigma, then submission id). Teams are ordered by total descending,
// ties broken by lower sigma, then team id. Throws ConfigError when a
// submission has no team.
std::vector<TeamStanding> rank_teams(
    std::span<const SubmissionResult> submissions,
    const std::map<std::string, std::string>& team_of);

std::vector<SubmissionResult> submissions_from(const ResultsTable& table);

// Team map files: tab-separated submission_id, team_id.
std::map<std::string, std::string> load_team_map(const std::filesystem::path& path);

}  // namespace detbench

#endif  // DETBENCH_METRICS_H_
