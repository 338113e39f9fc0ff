#ifndef DETBENCH_PIPELINE_H_
#define DETBENCH_PIPELINE_H_

// The evaluation pipeline behind the command-line tool: attack generation,
// calibration, evaluation and reporting, driven by a RunConfig.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "detbench/attacks.h"
#include "detbench/calibration.h"
#include "detbench/corpus.h"
#include "detbench/detectors.h"
#include "detbench/metrics.h"
#include "detbench/random.h"
#include "detbench/report.h"

namespace detbench {

std::string_view tool_version();

enum class Subtask : std::uint8_t { kA, kB, kCustom };

std::string_view to_string(Subtask subtask);
std::optional<Subtask> parse_subtask(std::string_view text);

struct AttackSetting {
  AttackKind kind = AttackKind::kZeroWidthSpace;
  double theta = 1.0;
};

struct ParaphraseSettings {
  std::string provider = "builtin-stub";  // or external-command, http-endpoint
  std::string command;
  std::string url;
  std::chrono::milliseconds timeout{30000};
};

// Declarative run description. See README for the JSON schema; relative
// paths in a config file resolve against the file's directory.
struct RunConfig {
  std::vector<std::filesystem::path> corpus_paths;
  Subtask subtask = Subtask::kA;
  FieldPredicate filter;             // used by the custom subtask
  std::optional<Axis> axis;          // defaults: A -> domain, B -> attack
  std::uint64_t master_seed = kDefaultMasterSeed;
  std::vector<AttackSetting> attacks;  // empty: all eleven at default theta
  std::optional<std::filesystem::path> resources_dir;
  ParaphraseSettings paraphrase;
  std::vector<DetectorHandle> detectors;
  SearchConfig search;
  std::filesystem::path output_dir = "detbench-out";
  std::vector<ReportFormat> report_formats{ReportFormat::kAlignedText};
  std::optional<std::filesystem::path> team_map;

  static RunConfig from_json(const nlohmann::json& json,
                             const std::filesystem::path& base_dir = {});
  static RunConfig load(const std::filesystem::path& path);
  nlohmann::ordered_json to_json() const;
  // FNV-1a 64 of the canonical JSON form, as 16 hex digits.
  std::string digest() const;

  FieldPredicate view_predicate() const;
  Axis effective_axis() const;
  std::vector<AttackSetting> effective_attacks() const;
  // Throws ConfigError for inconsistent settings and missing input paths.
  void validate() const;
};

AttackContext make_attack_context(const RunConfig& config);

struct AttackRun {
  Corpus corpus;
  nlohmann::ordered_json manifest;
  std::vector<std::string> warnings;
  std::size_t generated = 0;
};

// Emits, for every unattacked machine document, one attacked variant per
// configured attack (id "<id>.<attack>", adv_source_id = original id).
// Human and already attacked documents pass through unchanged. Per-document
// seeds are document_seed(master_seed, id, attack). Throws ConfigError for
// subtask A.
AttackRun run_attack(const RunConfig& config, const Corpus& corpus,
                     const AttackContext& context);

// Scores of every configured detector for every document of `documents`.
std::vector<ScoreRecord> collect_scores(const RunConfig& config,
                                        std::span<const Document> documents);

struct CalibrationRun {
  Corpus view;
  std::vector<ScoreRecord> scores;
  std::vector<CalibratedThreshold> thresholds;
  std::vector<std::string> warnings;
};

CalibrationRun run_calibrate(const RunConfig& config, const Corpus& corpus);

struct EvaluationRun {
  CalibrationRun calibration;
  ResultsTable results;
  std::vector<TeamStanding> ranking;
};

EvaluationRun run_evaluate(const RunConfig& config, const Corpus& corpus);

// Output writers. Each writes its files into `dir` plus manifest.json
// listing config digest, seeds, tool version and the FNV-1a digest of every
// written file. Returns the written file names.
std::vector<std::string> write_attack_outputs(const RunConfig& config,
                                              const AttackRun& run,
                                              const std::filesystem::path& dir);
std::vector<std::string> write_calibration_outputs(
    const RunConfig& config, const CalibrationRun& run,
    const std::filesystem::path& dir);
std::vector<std::string> write_evaluation_outputs(
    const RunConfig& config, const EvaluationRun& run,
    const std::filesystem::path& dir);

std::string file_digest(const std::filesystem::path& path);

}  // namespace detbench

#endif  // DETBENCH_PIPELINE_H_
