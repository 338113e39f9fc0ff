#include "detbench/calibration.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "detbench/error.h"
#include "detbench/parallel.h"
#include "detbench/tsv.h"

namespace detbench {

namespace {

double fpr_sorted(const std::vector<double>& sorted, double threshold) {
  const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), threshold);
  return static_cast<double>(above) / static_cast<double>(sorted.size());
}

std::vector<double> sorted_copy(std::span<const double> scores) {
  if (scores.empty()) throw EvaluationError("no human scores to calibrate on");
  std::vector<double> sorted(scores.begin(), scores.end());
  for (double s : sorted) {
    if (!std::isfinite(s)) throw EvaluationError("human scores must be finite");
  }
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

struct Visit {
  double threshold;
  double fpr;
};

}  // namespace

void SearchConfig::validate() const {
  if (!(target_fpr > 0.0 && target_fpr < 1.0)) throw ConfigError("target_fpr must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (max_iters < 1) throw ConfigError("max_iters must be at least 1");
}

double compute_fpr(std::span<const double> human_scores, double threshold) {
  if (human_scores.empty()) throw EvaluationError("compute_fpr: empty score list");
  const auto above = std::count_if(human_scores.begin(), human_scores.end(),
                                   [threshold](double s) { return s > threshold; });
  return static_cast<double>(above) / static_cast<double>(human_scores.size());
}

ThresholdSearch search_threshold(std::span<const double> human_scores,
                                 const SearchConfig& config) {
  config.validate();
  const std::vector<double> sorted = sorted_copy(human_scores);
  const double n = static_cast<double>(sorted.size());
  const double max = sorted.back();

  ThresholdSearch result;
  if (sorted.front() == max || std::floor(config.target_fpr * n) < 1.0) {
    result.threshold = max;
    result.achieved_fpr = 0.0;
    result.warning = sorted.front() == max
                         ? "all human scores are equal; no threshold reaches the target rate"
                         : "too few human scores (" + std::to_string(sorted.size()) +
                               ") to reach the target rate; using the zero-FPR threshold";
    return result;
  }

  const double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
  double threshold = mean;
  double fpr = fpr_sorted(sorted, threshold);
  double step = (max - mean) / 2.0;
  if (step == 0.0) step = 1.0;
  if (fpr < config.target_fpr) step = -step;

  std::vector<Visit> visited{{threshold, fpr}};
  int iterations = 0;
  bool converged = std::abs(fpr - config.target_fpr) <= config.epsilon;
  while (!converged && iterations < config.max_iters) {
    const bool was_above = fpr > config.target_fpr;
    threshold += step;
    fpr = fpr_sorted(sorted, threshold);
    ++iterations;
    visited.push_back({threshold, fpr});
    converged = std::abs(fpr - config.target_fpr) <= config.epsilon;
    const bool is_above = fpr > config.target_fpr;
    if (!converged && was_above != is_above) step = -step / 2.0;
  }

  result.iterations = iterations;
  result.converged = converged;
  if (converged) {
    result.threshold = threshold;
    result.achieved_fpr = fpr;
    return result;
  }
  const Visit* best = nullptr;
  for (const Visit& v : visited) {
    if (v.fpr >= config.target_fpr) continue;
    if (best == nullptr || v.fpr > best->fpr || (v.fpr == best->fpr && v.threshold < best->threshold)) {
      best = &v;
    }
  }
  if (best == nullptr) {
    for (const Visit& v : visited) {
      if (best == nullptr || v.fpr < best->fpr ||
          (v.fpr == best->fpr && v.threshold < best->threshold)) {
        best = &v;
      }
    }
  }
  result.threshold = best->threshold;
  result.achieved_fpr = best->fpr;
  return result;
}

double quantile_oracle(std::span<const double> human_scores, double target_fpr) {
  std::vector<double> sorted = sorted_copy(human_scores);
  std::vector<double> unique = sorted;
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  for (double t : unique) {
    if (fpr_sorted(sorted, t) <= target_fpr) return t;
  }
  return unique.back();
}

std::vector<CalibratedThreshold> calibrate(const Corpus& view, std::span<const ScoreRecord> scores,
                                           const SearchConfig& config) {
  config.validate();
  std::set<std::string> detectors;
  std::map<std::pair<std::string_view, std::string_view>, double> lookup;
  for (const ScoreRecord& r : scores) {
    if (!view.find(r.doc_id)) continue;
    detectors.insert(r.detector_id);
    if (!lookup.emplace(std::pair<std::string_view, std::string_view>(r.detector_id, r.doc_id), r.score).second) {
      throw IntegrityError("duplicate score for document '" + r.doc_id + "' and detector '" +
                           r.detector_id + "'");
    }
  }

  std::map<Domain, std::vector<const Document*>> humans;
  for (const Document& doc : view.documents()) {
    if (!doc.is_machine()) humans[doc.domain].push_back(&doc);
  }

  std::vector<CalibratedThreshold> out;
  std::vector<std::vector<double>> cell_scores;
  for (const std::string& detector : detectors) {
    for (const auto& [domain, docs] : humans) {
      std::vector<double> values;
      values.reserve(docs.size());
      for (const Document* doc : docs) {
        auto it = lookup.find({detector, doc->id});
        if (it == lookup.end()) {
          throw EvaluationError("missing score for human document '" + doc->id +
                                "' and detector '" + detector + "'");
        }
        values.push_back(it->second);
      }
      CalibratedThreshold t;
      t.detector_id = detector;
      t.domain = domain;
      t.human_count = values.size();
      out.push_back(std::move(t));
      cell_scores.push_back(std::move(values));
    }
  }
  parallel_for(out.size(), [&](std::size_t i) {
    const ThresholdSearch search = search_threshold(cell_scores[i], config);
    out[i].value = search.threshold;
    out[i].achieved_fpr = search.achieved_fpr;
    out[i].converged = search.converged;
    out[i].iterations_used = search.iterations;
    out[i].warning = search.warning;
  });
  return out;
}

std::vector<ScoreRecord> read_scores(std::istream& in, std::string_view source_name) {
  const tsv::Table table = tsv::Table::read(in, source_name);
  const std::size_t doc = table.require_column("doc_id");
  const std::size_t detector = table.require_column("detector_id");
  const std::size_t score = table.require_column("score");
  std::vector<ScoreRecord> out;
  out.reserve(table.rows().size());
  std::set<std::pair<std::string, std::string>> seen;
  for (const tsv::Row& row : table.rows()) {
    ScoreRecord r{row.fields[doc], row.fields[detector], tsv::parse_double(row.fields[score], row.line)};
    if (!std::isfinite(r.score)) throw ParseError("score must be finite", row.line);
    if (r.doc_id.empty() || r.detector_id.empty()) throw ParseError("empty doc_id or detector_id", row.line);
    if (!seen.emplace(r.detector_id, r.doc_id).second) {
      throw IntegrityError(std::string(source_name) + ": duplicate score for document '" + r.doc_id +
                           "' and detector '" + r.detector_id + "' (row " + std::to_string(row.line) + ")");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ScoreRecord> load_scores(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_scores(in, path.string());
}

void write_scores(std::ostream& out, std::span<const ScoreRecord> scores) {
  tsv::write_row(out, {"doc_id", "detector_id", "score"});
  for (const ScoreRecord& r : scores) {
    tsv::write_row(out, {r.doc_id, r.detector_id, tsv::format_double(r.score)});
  }
}

void write_thresholds(std::ostream& out, std::span<const CalibratedThreshold> thresholds) {
  tsv::write_row(out, {"detector_id", "domain", "threshold", "achieved_fpr", "converged",
                       "iterations", "human_count", "warning"});
  for (const CalibratedThreshold& t : thresholds) {
    tsv::write_row(out, {t.detector_id, std::string(to_string(t.domain)), tsv::format_double(t.value),
                         tsv::format_double(t.achieved_fpr), t.converged ? "true" : "false",
                         std::to_string(t.iterations_used), std::to_string(t.human_count), t.warning});
  }
}

std::vector<CalibratedThreshold> read_thresholds(std::istream& in, std::string_view source_name) {
  const tsv::Table table = tsv::Table::read(in, source_name);
  const std::size_t detector = table.require_column("detector_id");
  const std::size_t domain = table.require_column("domain");
  const std::size_t value = table.require_column("threshold");
  const std::size_t fpr = table.require_column("achieved_fpr");
  const std::size_t converged = table.require_column("converged");
  const std::size_t iterations = table.require_column("iterations");
  const std::size_t humans = table.require_column("human_count");
  const auto warning = table.column("warning");
  std::vector<CalibratedThreshold> out;
  for (const tsv::Row& row : table.rows()) {
    CalibratedThreshold t;
    t.detector_id = row.fields[detector];
    auto d = parse_domain(row.fields[domain]);
    if (!d) throw SchemaError("unknown domain '" + row.fields[domain] + "' (row " + std::to_string(row.line) + ")");
    t.domain = *d;
    t.value = tsv::parse_double(row.fields[value], row.line);
    t.achieved_fpr = tsv::parse_double(row.fields[fpr], row.line);
    const std::string& c = row.fields[converged];
    if (c != "true" && c != "false") throw ParseError("converged must be true or false", row.line);
    t.converged = c == "true";
    t.iterations_used = static_cast<int>(tsv::parse_count(row.fields[iterations], row.line));
    t.human_count = tsv::parse_count(row.fields[humans], row.line);
    if (warning) t.warning = row.fields[*warning];
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace detbench
