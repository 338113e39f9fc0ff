#ifndef DETBENCH_CALIBRATION_H_
#define DETBENCH_CALIBRATION_H_

// Per-domain decision thresholds at a fixed false-positive rate.
//
// Prediction rule: score > threshold means "machine". The false-positive
// rate of a threshold is the fraction of human scores strictly above it.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "detbench/corpus.h"
#include "detbench/taxonomy.h"

namespace detbench {

struct ScoreRecord {
  std::string doc_id;
  std::string detector_id;
  double score = 0.0;  // finite; higher = more machine-like

  friend bool operator==(const ScoreRecord&, const ScoreRecord&) = default;
};

struct SearchConfig {
  double target_fpr = 0.05;
  double epsilon = 0.0005;
  int max_iters = 50;

  // Throws ConfigError.
  void validate() const;
};

struct ThresholdSearch {
  double threshold = 0.0;
  double achieved_fpr = 0.0;
  bool converged = false;
  int iterations = 0;
  std::string warning;  // non-empty for degenerate inputs
};

struct CalibratedThreshold {
  std::string detector_id;
  Domain domain = Domain::kAbstracts;
  double value = 0.0;
  double achieved_fpr = 0.0;
  bool converged = false;
  int iterations_used = 0;
  std::size_t human_count = 0;
  std::string warning;

  friend bool operator==(const CalibratedThreshold&,
                         const CalibratedThreshold&) = default;
};

// Throws EvaluationError on an empty list.
double compute_fpr(std::span<const double> human_scores, double threshold);

// Iterative search: start at the mean human score, step toward the target
// rate, and on every overshoot halve the step and reverse it. Stops once
// |fpr - target| <= epsilon or after max_iters steps. Without convergence
// the visited threshold whose rate is closest to, and strictly below, the
// target is returned (lowest such threshold on ties); if none is below, the
// visited threshold with the lowest rate.
//
// The first step is half the distance from the mean to the largest score
// (1.0 if that distance is zero). Inputs that cannot reach a positive rate
// at or below the target (all scores equal, or fewer than 1/target scores)
// return the largest score with rate 0, converged = false and a warning.
ThresholdSearch search_threshold(std::span<const double> human_scores,
                                 const SearchConfig& config = {});

// Smallest observed score t with compute_fpr(scores, t) <= target_fpr, by
// exhaustive scan of the sorted unique scores. Verification oracle.
double quantile_oracle(std::span<const double> human_scores, double target_fpr);

// Thresholds for every (detector, domain) pair with human documents in
// `view`. Throws EvaluationError when a human document lacks a score.
std::vector<CalibratedThreshold> calibrate(const Corpus& view,
                                           std::span<const ScoreRecord> scores,
                                           const SearchConfig& config = {});

// Score files: tab-separated with header doc_id, detector_id, score.
std::vector<ScoreRecord> read_scores(std::istream& in,
                                     std::string_view source_name = "scores");
std::vector<ScoreRecord> load_scores(const std::filesystem::path& path);
void write_scores(std::ostream& out, std::span<const ScoreRecord> scores);

// Calibration report: tab-separated CalibratedThreshold fields.
void write_thresholds(std::ostream& out,
                      std::span<const CalibratedThreshold> thresholds);
std::vector<CalibratedThreshold> read_thresholds(
    std::istream& in, std::string_view source_name = "thresholds");

}  // namespace detbench

#endif  // DETBENCH_CALIBRATION_H_
