#include "detbench/metrics.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_map>

#include "detbench/error.h"
#include "detbench/parallel.h"
#include "detbench/tsv.h"

namespace detbench {

namespace {

struct Tally {
  std::size_t support = 0;
  std::size_t detected = 0;
};

EvalCell make_cell(const std::string& detector, const Strata& strata, const Tally& tally) {
  return EvalCell{detector, strata,
                  static_cast<double>(tally.detected) / static_cast<double>(tally.support),
                  tally.support, tally.detected};
}

Strata axis_strata(Axis axis, std::string_view value) {
  Strata s;
  if (axis == Axis::kDomain) {
    s.domain = parse_domain(value);
  } else {
    s.attack = parse_attack(value);
  }
  return s;
}

struct DetectorResult {
  std::vector<EvalCell> cells;
  std::vector<EvalCell> breakdown;
  std::vector<std::string> gaps;
};

}  // namespace

std::string_view to_string(Axis axis) { return axis == Axis::kDomain ? "domain" : "attack"; }

std::optional<Axis> parse_axis(std::string_view text) {
  if (text == "domain") return Axis::kDomain;
  if (text == "attack") return Axis::kAttack;
  return std::nullopt;
}

const DetectorSummary* ResultsTable::summary(std::string_view detector_id) const {
  for (const DetectorSummary& s : summaries) {
    if (s.detector_id == detector_id) return &s;
  }
  return nullptr;
}

double tpr(std::span<const double> machine_scores, double threshold) {
  if (machine_scores.empty()) throw EvaluationError("tpr: empty score list");
  const auto above = std::count_if(machine_scores.begin(), machine_scores.end(),
                                   [threshold](double s) { return s > threshold; });
  return static_cast<double>(above) / static_cast<double>(machine_scores.size());
}

DetectorSummary summarize(std::string detector_id, std::span<const double> values) {
  DetectorSummary s;
  s.detector_id = std::move(detector_id);
  s.cell_count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.total = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - s.total) * (v - s.total);
  s.sigma = std::sqrt(sq / static_cast<double>(values.size()));
  return s;
}

std::vector<DetectorSummary> summarize_cells(std::span<const EvalCell> cells) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> values;
  for (const EvalCell& cell : cells) {
    auto [it, inserted] = values.try_emplace(cell.detector_id);
    if (inserted) order.push_back(cell.detector_id);
    it->second.push_back(cell.tpr);
  }
  std::vector<DetectorSummary> out;
  for (const std::string& id : order) out.push_back(summarize(id, values[id]));
  return out;
}

std::vector<std::string> axis_values(Axis axis) {
  std::vector<std::string> out;
  if (axis == Axis::kDomain) {
    for (Domain d : kAllDomains) out.emplace_back(to_string(d));
  } else {
    for (AttackKind a : kAllAttackKinds) out.emplace_back(to_string(a));
  }
  return out;
}

std::string axis_value(const Strata& strata, Axis axis) {
  if (axis == Axis::kDomain) return strata.domain ? std::string(to_string(*strata.domain)) : "*";
  return strata.attack ? std::string(to_string(*strata.attack)) : "*";
}

ResultsTable evaluate(const Corpus& view, std::span<const ScoreRecord> scores,
                      std::span<const CalibratedThreshold> thresholds, Axis axis,
                      const EvaluateOptions& options) {
  std::set<std::string> detectors;
  std::map<std::pair<std::string_view, Domain>, double> cut;
  for (const CalibratedThreshold& t : thresholds) {
    detectors.insert(t.detector_id);
    cut[{t.detector_id, t.domain}] = t.value;
  }
  std::map<std::pair<std::string_view, std::string_view>, double> lookup;
  for (const ScoreRecord& r : scores) lookup.emplace(std::pair<std::string_view, std::string_view>(r.detector_id, r.doc_id), r.score);

  std::vector<const Document*> machine;
  for (const Document& doc : view.documents()) {
    if (doc.is_machine()) machine.push_back(&doc);
  }

  const std::vector<std::string> ids(detectors.begin(), detectors.end());
  std::vector<DetectorResult> results(ids.size());
  parallel_for(ids.size(), [&](std::size_t d) {
    const std::string& detector = ids[d];
    std::map<std::string, Tally> by_axis;
    std::map<Strata, Tally> fine;
    for (const Document* doc : machine) {
      auto score = lookup.find({detector, doc->id});
      if (score == lookup.end()) {
        throw EvaluationError("missing score for document '" + doc->id + "' and detector '" +
                              detector + "'");
      }
      auto threshold = cut.find({detector, doc->domain});
      if (threshold == cut.end()) {
        throw EvaluationError("no calibrated threshold for detector '" + detector +
                              "' in domain '" + std::string(to_string(doc->domain)) + "'");
      }
      const bool hit = score->second > threshold->second;
      if (axis == Axis::kDomain || doc->is_attacked()) {
        const std::string key(axis == Axis::kDomain ? to_string(doc->domain) : to_string(doc->attack));
        Tally& t = by_axis[key];
        ++t.support;
        t.detected += hit;
      }
      if (options.breakdown) {
        Tally& t = fine[Strata{doc->domain, doc->model, doc->decoding, doc->attack}];
        ++t.support;
        t.detected += hit;
      }
    }
    DetectorResult& out = results[d];
    for (const std::string& value : axis_values(axis)) {
      auto it = by_axis.find(value);
      if (it == by_axis.end()) {
        out.gaps.push_back(value);
      } else {
        out.cells.push_back(make_cell(detector, axis_strata(axis, value), it->second));
      }
    }
    for (const auto& [strata, tally] : fine) out.breakdown.push_back(make_cell(detector, strata, tally));
  });

  ResultsTable table;
  table.axis = axis;
  for (std::size_t d = 0; d < ids.size(); ++d) {
    DetectorResult& r = results[d];
    std::move(r.cells.begin(), r.cells.end(), std::back_inserter(table.cells));
    std::move(r.breakdown.begin(), r.breakdown.end(), std::back_inserter(table.breakdown));
    if (!r.gaps.empty()) table.coverage_gaps[ids[d]] = std::move(r.gaps);
  }
  table.summaries = summarize_cells(table.cells);
  return table;
}

std::vector<TeamStanding> rank_teams(std::span<const SubmissionResult> submissions,
                                     const std::map<std::string, std::string>& team_of) {
  std::map<std::string, TeamStanding> best;
  for (const SubmissionResult& s : submissions) {
    auto team = team_of.find(s.submission_id);
    if (team == team_of.end()) {
      throw ConfigError("submission '" + s.submission_id + "' is not mapped to a team");
    }
    TeamStanding candidate{team->second, s.submission_id, s.total, s.sigma};
    auto [it, inserted] = best.try_emplace(team->second, candidate);
    if (inserted) continue;
    const TeamStanding& current = it->second;
    if (std::tuple(-candidate.total, candidate.sigma, candidate.best_submission_id) <
        std::tuple(-current.total, current.sigma, current.best_submission_id)) {
      it->second = candidate;
    }
  }
  std::vector<TeamStanding> ranking;
  for (auto& [team, standing] : best) ranking.push_back(standing);
  std::sort(ranking.begin(), ranking.end(), [](const TeamStanding& a, const TeamStanding& b) {
    return std::tuple(-a.total, a.sigma, a.team_id) < std::tuple(-b.total, b.sigma, b.team_id);
  });
  return ranking;
}

std::vector<SubmissionResult> submissions_from(const ResultsTable& table) {
  std::vector<SubmissionResult> out;
  for (const DetectorSummary& s : table.summaries) out.push_back({s.detector_id, s.total, s.sigma});
  return out;
}

std::map<std::string, std::string> load_team_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  const tsv::Table table = tsv::Table::read(in, path.string());
  const std::size_t submission = table.require_column("submission_id");
  const std::size_t team = table.require_column("team_id");
  std::map<std::string, std::string> out;
  for (const tsv::Row& row : table.rows()) {
    if (!out.emplace(row.fields[submission], row.fields[team]).second) {
      throw ParseError("duplicate submission '" + row.fields[submission] + "'", row.line);
    }
  }
  return out;
}

}  // namespace detbench
