#include "detbench/pipeline.h"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "detbench/error.h"
#include "detbench/parallel.h"
#include "detbench/tsv.h"

#ifndef DETBENCH_VERSION
#define DETBENCH_VERSION "0.0.0"
#endif

namespace detbench {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void check_keys(const json& object, std::string_view where,
                std::initializer_list<std::string_view> allowed) {
  if (!object.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <class T>
T get(const json& object, std::string_view key, std::string_view where) {
  try {
    return object.at(std::string(key)).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("invalid or missing '" + std::string(key) + "' in " + std::string(where));
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.lexically_normal();
}

std::uint64_t parse_seed(const json& value) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(value.get<std::int64_t>());
  }
  if (value.is_string()) {
    const std::string text = value.get<std::string>();
    try {
      std::size_t used = 0;
      const std::uint64_t seed = std::stoull(text, &used, 0);
      if (used == text.size()) return seed;
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("master_seed must be a non-negative integer or an integer string");
}

std::string hex64(std::uint64_t v) { return fmt::format("{:016x}", v); }

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out = open_output(path);
  out << content;
  if (!out) throw Error("write failed: " + path.string());
}

class OutputDir {
 public:
  OutputDir(const RunConfig& config, std::string command, const std::filesystem::path& dir)
      : config_(config), command_(std::move(command)), dir_(dir) {
    std::filesystem::create_directories(dir_);
  }

  std::filesystem::path path(const std::string& name) {
    names_.push_back(name);
    return dir_ / name;
  }

  std::vector<std::string> finish(const std::vector<std::string>& warnings) {
    ordered_json manifest;
    manifest["tool"] = "detbench";
    manifest["tool_version"] = std::string(tool_version());
    manifest["command"] = command_;
    manifest["config_digest"] = config_.digest();
    manifest["master_seed"] = config_.master_seed;
    manifest["seed_rule"] = "document_seed(master_seed, document id, attack name)";
    manifest["config"] = config_.to_json();
    manifest["warnings"] = warnings;
    ordered_json files = ordered_json::object();
    for (const std::string& name : names_) files[name] = file_digest(dir_ / name);
    manifest["files"] = files;
    for (const auto& [key, value] : extra_.items()) manifest[key] = value;
    write_text(dir_ / "manifest.json", manifest.dump(2) + "\n");
    std::vector<std::string> written = names_;
    written.push_back("manifest.json");
    return written;
  }

  ordered_json& extra() { return extra_; }

 private:
  const RunConfig& config_;
  std::string command_;
  std::filesystem::path dir_;
  std::vector<std::string> names_;
  ordered_json extra_ = ordered_json::object();
};

void write_calibration_files(OutputDir& out, const CalibrationRun& run) {
  {
    std::ofstream f = open_output(out.path("thresholds.tsv"));
    write_thresholds(f, run.thresholds);
  }
  {
    std::ofstream f = open_output(out.path("human_scores.tsv"));
    write_scores(f, run.scores);
  }
  std::ostringstream report;
  std::size_t converged = 0;
  for (const CalibratedThreshold& t : run.thresholds) converged += t.converged;
  report << "cells " << run.thresholds.size() << ", converged " << converged << '\n';
  for (const CalibratedThreshold& t : run.thresholds) {
    report << fmt::format("{}\t{}\t{}\tfpr={}\titerations={}\thumans={}{}\n", t.detector_id,
                          to_string(t.domain), t.converged ? "converged" : "not-converged",
                          tsv::format_double(t.achieved_fpr), t.iterations_used, t.human_count,
                          t.warning.empty() ? "" : "\t" + t.warning);
  }
  write_text(out.path("convergence.txt"), report.str());
}

}  // namespace

std::string_view tool_version() { return DETBENCH_VERSION; }

std::string_view to_string(Subtask subtask) {
  switch (subtask) {
    case Subtask::kA:
      return "A";
    case Subtask::kB:
      return "B";
    case Subtask::kCustom:
      return "custom";
  }
  return "A";
}

std::optional<Subtask> parse_subtask(std::string_view text) {
  if (text == "A" || text == "a") return Subtask::kA;
  if (text == "B" || text == "b") return Subtask::kB;
  if (text == "custom") return Subtask::kCustom;
  return std::nullopt;
}

RunConfig RunConfig::from_json(const json& root, const std::filesystem::path& base_dir) {
  check_keys(root, "config",
             {"corpus", "subtask", "filter", "axis", "master_seed", "attacks", "resources_dir",
              "paraphrase", "detectors", "search", "output_dir", "report_formats", "team_map"});
  RunConfig config;
  if (root.contains("corpus")) {
    const json& corpus = root["corpus"];
    if (corpus.is_string()) {
      config.corpus_paths.push_back(resolve(base_dir, corpus.get<std::string>()));
    } else if (corpus.is_array()) {
      for (const json& p : corpus) {
        if (!p.is_string()) throw ConfigError("corpus entries must be strings");
        config.corpus_paths.push_back(resolve(base_dir, p.get<std::string>()));
      }
    } else {
      throw ConfigError("corpus must be a path or a list of paths");
    }
  }
  if (root.contains("subtask")) {
    auto s = parse_subtask(get<std::string>(root, "subtask", "config"));
    if (!s) throw ConfigError("subtask must be A, B or custom");
    config.subtask = *s;
  }
  if (root.contains("filter")) config.filter = FieldPredicate::parse(get<std::string>(root, "filter", "config"));
  if (root.contains("axis")) {
    auto a = parse_axis(get<std::string>(root, "axis", "config"));
    if (!a) throw ConfigError("axis must be domain or attack");
    config.axis = *a;
  }
  if (root.contains("master_seed")) config.master_seed = parse_seed(root["master_seed"]);
  if (root.contains("attacks")) {
    if (!root["attacks"].is_array()) throw ConfigError("attacks must be a list");
    for (const json& item : root["attacks"]) {
      AttackSetting setting;
      std::string kind;
      if (item.is_string()) {
        kind = item.get<std::string>();
      } else {
        check_keys(item, "attack entry", {"kind", "theta"});
        kind = get<std::string>(item, "kind", "attack entry");
      }
      auto parsed = parse_attack(kind);
      if (!parsed || *parsed == AttackKind::kNone) throw ConfigError("unknown attack '" + kind + "'");
      setting.kind = *parsed;
      setting.theta = default_theta(*parsed);
      if (item.is_object() && item.contains("theta")) setting.theta = get<double>(item, "theta", "attack entry");
      config.attacks.push_back(setting);
    }
  }
  if (root.contains("resources_dir")) {
    config.resources_dir = resolve(base_dir, get<std::string>(root, "resources_dir", "config"));
  }
  if (root.contains("paraphrase")) {
    const json& p = root["paraphrase"];
    check_keys(p, "paraphrase", {"provider", "command", "url", "timeout_ms"});
    if (p.contains("provider")) config.paraphrase.provider = get<std::string>(p, "provider", "paraphrase");
    if (p.contains("command")) config.paraphrase.command = get<std::string>(p, "command", "paraphrase");
    if (p.contains("url")) config.paraphrase.url = get<std::string>(p, "url", "paraphrase");
    if (p.contains("timeout_ms")) {
      config.paraphrase.timeout = std::chrono::milliseconds(get<std::int64_t>(p, "timeout_ms", "paraphrase"));
    }
  }
  if (root.contains("detectors")) {
    if (!root["detectors"].is_array()) throw ConfigError("detectors must be a list");
    for (const json& d : root["detectors"]) {
      check_keys(d, "detector entry",
                 {"id", "kind", "path", "url", "timeout_ms", "max_batch", "retries",
                  "initial_backoff_ms", "max_backoff_ms", "max_in_flight"});
      DetectorHandle h;
      h.detector_id = get<std::string>(d, "id", "detector entry");
      const std::string kind = get<std::string>(d, "kind", "detector entry");
      auto k = parse_detector_kind(kind);
      if (!k) throw ConfigError("unknown detector kind '" + kind + "'");
      h.kind = *k;
      if (d.contains("path")) h.path = resolve(base_dir, get<std::string>(d, "path", "detector entry"));
      if (d.contains("url")) h.remote.url = get<std::string>(d, "url", "detector entry");
      if (d.contains("timeout_ms")) {
        h.remote.timeout = std::chrono::milliseconds(get<std::int64_t>(d, "timeout_ms", "detector entry"));
      }
      if (d.contains("max_batch")) h.remote.max_batch = get<std::size_t>(d, "max_batch", "detector entry");
      if (d.contains("retries")) h.remote.retries = get<int>(d, "retries", "detector entry");
      if (d.contains("initial_backoff_ms")) {
        h.remote.initial_backoff =
            std::chrono::milliseconds(get<std::int64_t>(d, "initial_backoff_ms", "detector entry"));
      }
      if (d.contains("max_backoff_ms")) {
        h.remote.max_backoff =
            std::chrono::milliseconds(get<std::int64_t>(d, "max_backoff_ms", "detector entry"));
      }
      if (d.contains("max_in_flight")) {
        h.remote.max_in_flight = get<std::size_t>(d, "max_in_flight", "detector entry");
      }
      config.detectors.push_back(std::move(h));
    }
  }
  if (root.contains("search")) {
    const json& s = root["search"];
    check_keys(s, "search", {"target_fpr", "epsilon", "max_iters"});
    if (s.contains("target_fpr")) config.search.target_fpr = get<double>(s, "target_fpr", "search");
    if (s.contains("epsilon")) config.search.epsilon = get<double>(s, "epsilon", "search");
    if (s.contains("max_iters")) config.search.max_iters = get<int>(s, "max_iters", "search");
  }
  if (root.contains("output_dir")) {
    config.output_dir = resolve(base_dir, get<std::string>(root, "output_dir", "config"));
  }
  if (root.contains("report_formats")) {
    config.report_formats.clear();
    for (const std::string& f : get<std::vector<std::string>>(root, "report_formats", "config")) {
      auto format = parse_report_format(f);
      if (!format) throw ConfigError("unknown report format '" + f + "'");
      config.report_formats.push_back(*format);
    }
  }
  if (root.contains("team_map")) config.team_map = resolve(base_dir, get<std::string>(root, "team_map", "config"));
  return config;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  return from_json(root, path.parent_path());
}

ordered_json RunConfig::to_json() const {
  ordered_json j;
  j["corpus"] = ordered_json::array();
  for (const auto& p : corpus_paths) j["corpus"].push_back(p.generic_string());
  j["subtask"] = std::string(to_string(subtask));
  j["filter"] = filter.str();
  j["axis"] = std::string(to_string(effective_axis()));
  j["master_seed"] = master_seed;
  j["attacks"] = ordered_json::array();
  for (const AttackSetting& a : effective_attacks()) {
    j["attacks"].push_back({{"kind", std::string(to_string(a.kind))}, {"theta", a.theta}});
  }
  j["resources_dir"] = resources_dir ? resources_dir->generic_string() : std::string("builtin");
  j["paraphrase"] = {{"provider", paraphrase.provider},
                     {"command", paraphrase.command},
                     {"url", paraphrase.url},
                     {"timeout_ms", paraphrase.timeout.count()}};
  j["detectors"] = ordered_json::array();
  for (const DetectorHandle& d : detectors) {
    ordered_json h;
    h["id"] = d.detector_id;
    h["kind"] = std::string(to_string(d.kind));
    if (d.kind == DetectorKind::kRemoteEndpoint) {
      h["url"] = d.remote.url;
      h["timeout_ms"] = d.remote.timeout.count();
      h["max_batch"] = d.remote.max_batch;
      h["retries"] = d.remote.retries;
      h["initial_backoff_ms"] = d.remote.initial_backoff.count();
      h["max_backoff_ms"] = d.remote.max_backoff.count();
      h["max_in_flight"] = d.remote.max_in_flight;
    } else {
      h["path"] = d.path.generic_string();
    }
    j["detectors"].push_back(std::move(h));
  }
  j["search"] = {{"target_fpr", search.target_fpr},
                 {"epsilon", search.epsilon},
                 {"max_iters", search.max_iters}};
  j["report_formats"] = ordered_json::array();
  for (ReportFormat f : report_formats) j["report_formats"].push_back(std::string(to_string(f)));
  j["team_map"] = team_map ? team_map->generic_string() : std::string();
  return j;
}

std::string RunConfig::digest() const { return hex64(fnv1a64(to_json().dump())); }

FieldPredicate RunConfig::view_predicate() const {
  switch (subtask) {
    case Subtask::kA:
      return FieldPredicate::subtask_a().conjoin(filter);
    case Subtask::kB:
      return FieldPredicate::subtask_b().conjoin(filter);
    case Subtask::kCustom:
      return filter;
  }
  return filter;
}

Axis RunConfig::effective_axis() const {
  if (axis) return *axis;
  return subtask == Subtask::kB ? Axis::kAttack : Axis::kDomain;
}

std::vector<AttackSetting> RunConfig::effective_attacks() const {
  if (!attacks.empty()) return attacks;
  std::vector<AttackSetting> all;
  for (AttackKind kind : kAllAttackKinds) all.push_back({kind, default_theta(kind)});
  return all;
}

void RunConfig::validate() const {
  for (const auto& p : corpus_paths) {
    if (!std::filesystem::exists(p)) throw ConfigError("corpus file not found: " + p.string());
  }
  std::set<AttackKind> kinds;
  for (const AttackSetting& a : attacks) {
    AttackSpec{a.kind, a.theta, 0}.validate();
    if (!kinds.insert(a.kind).second) {
      throw ConfigError("attack '" + std::string(to_string(a.kind)) + "' configured twice");
    }
  }
  if (resources_dir && !std::filesystem::is_directory(*resources_dir)) {
    throw ConfigError("resources directory not found: " + resources_dir->string());
  }
  if (paraphrase.provider == "external-command") {
    if (paraphrase.command.empty()) throw ConfigError("paraphrase provider external-command needs a command");
  } else if (paraphrase.provider == "http-endpoint") {
    split_url(paraphrase.url);
  } else if (paraphrase.provider != "builtin-stub") {
    throw ConfigError("unknown paraphrase provider '" + paraphrase.provider + "'");
  }
  if (paraphrase.timeout.count() <= 0) throw ConfigError("paraphrase timeout must be positive");
  std::set<std::string> ids;
  for (const DetectorHandle& d : detectors) {
    d.validate();
    if (!ids.insert(d.detector_id).second) {
      throw ConfigError("detector id '" + d.detector_id + "' is not unique");
    }
    if (!d.path.empty() && !std::filesystem::exists(d.path)) {
      throw ConfigError("detector '" + d.detector_id + "': file not found: " + d.path.string());
    }
  }
  search.validate();
  if (report_formats.empty()) throw ConfigError("at least one report format is required");
  if (team_map && !std::filesystem::exists(*team_map)) {
    throw ConfigError("team map not found: " + team_map->string());
  }
}

AttackContext make_attack_context(const RunConfig& config) {
  AttackContext context;
  if (config.resources_dir) context.resources = ResourceSet::from_directory(*config.resources_dir);
  const ParaphraseSettings& p = config.paraphrase;
  if (p.provider == "external-command") {
    context.paraphraser = std::make_shared<CommandParaphraser>(p.command, p.timeout);
  } else if (p.provider == "http-endpoint") {
    context.paraphraser = std::make_shared<HttpParaphraser>(p.url, p.timeout);
  } else {
    context.paraphraser = std::make_shared<BuiltinParaphraser>(context.resources);
  }
  return context;
}

AttackRun run_attack(const RunConfig& config, const Corpus& corpus, const AttackContext& context) {
  if (config.subtask == Subtask::kA) {
    throw ConfigError("subtask A evaluates unattacked text only; attack generation needs subtask B or custom");
  }
  const std::vector<AttackSetting> attacks = config.effective_attacks();
  std::vector<const Document*> originals;
  for (const Document& doc : corpus.documents()) {
    if (doc.is_machine() && !doc.is_attacked()) originals.push_back(&doc);
  }

  struct Job {
    Document doc;
    std::size_t total_sites = 0;
    std::size_t mutated_sites = 0;
    std::uint64_t seed = 0;
  };
  std::vector<Job> jobs(originals.size() * attacks.size());
  parallel_for(jobs.size(), [&](std::size_t j) {
    const Document& source = *originals[j / attacks.size()];
    const AttackSetting& setting = attacks[j % attacks.size()];
    const std::string_view name = to_string(setting.kind);
    AttackSpec spec{setting.kind, setting.theta, document_seed(config.master_seed, source.id, name)};
    AttackResult result;
    try {
      result = apply_attack(spec, source.text, context);
    } catch (const Error& e) {
      throw ProviderError("attack " + std::string(name) + " on document '" + source.id + "': " + e.what());
    }
    Job& job = jobs[j];
    job.doc = source;
    job.doc.id = source.id + "." + std::string(name);
    job.doc.text = std::move(result.text);
    job.doc.attack = setting.kind;
    job.doc.adv_source_id = source.id;
    job.total_sites = result.total_sites;
    job.mutated_sites = result.mutated_sites;
    job.seed = spec.seed;
  });

  AttackRun run;
  std::vector<Document> docs(corpus.documents().begin(), corpus.documents().end());
  ordered_json per_attack = ordered_json::array();
  std::vector<std::size_t> total(attacks.size()), mutated(attacks.size()), changed(attacks.size());
  ordered_json sites = ordered_json::array();
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const std::size_t a = j % attacks.size();
    total[a] += jobs[j].total_sites;
    mutated[a] += jobs[j].mutated_sites;
    changed[a] += jobs[j].doc.text != originals[j / attacks.size()]->text;
  }
  for (std::size_t a = 0; a < attacks.size(); ++a) {
    per_attack.push_back({{"kind", std::string(to_string(attacks[a].kind))},
                          {"theta", attacks[a].theta},
                          {"documents", originals.size()},
                          {"changed_documents", changed[a]},
                          {"total_sites", total[a]},
                          {"mutated_sites", mutated[a]}});
  }
  std::ostringstream site_table;
  tsv::write_row(site_table, {"id", "attack", "seed", "total_sites", "mutated_sites"});
  for (Job& job : jobs) {
    tsv::write_row(site_table, {job.doc.id, std::string(to_string(job.doc.attack)), hex64(job.seed),
                                std::to_string(job.total_sites), std::to_string(job.mutated_sites)});
    docs.push_back(std::move(job.doc));
  }
  run.generated = jobs.size();
  if (originals.empty()) {
    run.warnings.push_back("the corpus has no unattacked machine documents; no attacked documents were generated");
  }
  run.manifest["attacks"] = per_attack;
  run.manifest["site_table"] = site_table.str();
  run.corpus = Corpus::from_documents(std::move(docs), corpus.split(), corpus.lineage_known());
  return run;
}

std::vector<ScoreRecord> collect_scores(const RunConfig& config, std::span<const Document> documents) {
  std::vector<ScoreRecord> all;
  if (documents.empty()) return all;
  for (DetectorHandle handle : config.detectors) {
    if (handle.kind == DetectorKind::kRemoteEndpoint) {
      if (const char* key = std::getenv(kCredentialEnvVar)) handle.remote.credential = key;
    }
    std::vector<ScoreRecord> scores = get_scores(handle, documents);
    std::move(scores.begin(), scores.end(), std::back_inserter(all));
  }
  return all;
}

CalibrationRun run_calibrate(const RunConfig& config, const Corpus& corpus) {
  if (config.detectors.empty()) throw ConfigError("no detectors configured");
  CalibrationRun run;
  run.view = filter_view(corpus, config.view_predicate());
  std::vector<Document> humans;
  for (const Document& doc : run.view.documents()) {
    if (!doc.is_machine()) humans.push_back(doc);
  }
  run.scores = collect_scores(config, humans);
  run.thresholds = calibrate(run.view, run.scores, config.search);
  for (const CalibratedThreshold& t : run.thresholds) {
    const std::string cell = t.detector_id + "/" + std::string(to_string(t.domain));
    if (!t.warning.empty()) {
      run.warnings.push_back(cell + ": " + t.warning);
    } else if (!t.converged) {
      run.warnings.push_back(cell + ": threshold search did not converge; achieved FPR " +
                             tsv::format_double(t.achieved_fpr));
    }
  }
  return run;
}

EvaluationRun run_evaluate(const RunConfig& config, const Corpus& corpus) {
  EvaluationRun run;
  run.calibration = run_calibrate(config, corpus);
  std::vector<Document> machines;
  for (const Document& doc : run.calibration.view.documents()) {
    if (doc.is_machine()) machines.push_back(doc);
  }
  std::vector<ScoreRecord> scores = run.calibration.scores;
  std::vector<ScoreRecord> machine_scores = collect_scores(config, machines);
  std::move(machine_scores.begin(), machine_scores.end(), std::back_inserter(scores));
  try {
    run.results = evaluate(run.calibration.view, scores, run.calibration.thresholds, config.effective_axis());
  } catch (const EvaluationError& e) {
    throw EvaluationError(std::string("evaluation (subtask ") + std::string(to_string(config.subtask)) +
                          "): " + e.what());
  }
  if (config.team_map) {
    const std::vector<SubmissionResult> submissions = submissions_from(run.results);
    run.ranking = rank_teams(submissions, load_team_map(*config.team_map));
  }
  return run;
}

std::vector<std::string> write_attack_outputs(const RunConfig& config, const AttackRun& run,
                                              const std::filesystem::path& dir) {
  OutputDir out(config, "attack", dir);
  save_corpus(run.corpus, out.path("attacked_corpus.jsonl"), CorpusFormat::kRecordLines);
  write_text(out.path("attack_sites.tsv"), run.manifest.value("site_table", std::string()));
  out.extra()["attacks"] = run.manifest.value("attacks", ordered_json::array());
  out.extra()["generated_documents"] = run.generated;
  return out.finish(run.warnings);
}

std::vector<std::string> write_calibration_outputs(const RunConfig& config, const CalibrationRun& run,
                                                   const std::filesystem::path& dir) {
  OutputDir out(config, "calibrate", dir);
  write_calibration_files(out, run);
  return out.finish(run.warnings);
}

std::vector<std::string> write_evaluation_outputs(const RunConfig& config, const EvaluationRun& run,
                                                  const std::filesystem::path& dir) {
  OutputDir out(config, "evaluate", dir);
  write_calibration_files(out, run.calibration);
  {
    std::ofstream f = open_output(out.path("results.tsv"));
    write_results(f, run.results);
  }
  write_text(out.path("results.json"), results_json(run.results, run.calibration.thresholds));
  for (ReportFormat format : config.report_formats) {
    write_text(out.path("report" + std::string(file_extension(format))),
               render_report(run.results, format, run.ranking));
  }
  if (!run.ranking.empty()) {
    std::ofstream f = open_output(out.path("ranking.tsv"));
    tsv::write_row(f, {"rank", "team_id", "best_submission", "total", "sigma"});
    for (std::size_t i = 0; i < run.ranking.size(); ++i) {
      const TeamStanding& t = run.ranking[i];
      tsv::write_row(f, {std::to_string(i + 1), t.team_id, t.best_submission_id,
                         tsv::format_double(t.total), tsv::format_double(t.sigma)});
    }
  }
  return out.finish(run.calibration.warnings);
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return hex64(fnv1a64(buf.str()));
}

}  // namespace detbench
