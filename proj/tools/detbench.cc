// detbench: attack, calibrate, evaluate and report on detector benchmarks.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "detbench/error.h"
#include "detbench/pipeline.h"
#include "detbench/synthetic.h"

namespace fs = std::filesystem;
using namespace detbench;

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kParse = 3,
  kSchema = 4,
  kIntegrity = 5,
  kEvaluation = 6,
  kExternal = 7,
};

struct Flags {
  std::string config;
  std::vector<std::string> corpus;
  std::string subtask;
  std::string filter;
  std::string axis;
  std::string seed;
  std::vector<std::string> attacks;
  std::vector<std::string> thetas;
  std::string resources;
  std::string paraphrase_command;
  std::string paraphrase_url;
  std::vector<std::string> score_files;
  std::vector<std::string> builtin_detectors;
  std::vector<std::string> remote_detectors;
  std::vector<std::string> only_detectors;
  std::optional<double> target_fpr;
  std::optional<double> epsilon;
  std::optional<int> max_iters;
  std::string out;
  std::vector<std::string> formats;
  std::string team_map;
};

std::pair<std::string, std::string> split_assignment(const std::string& text, const char* flag) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError(fmt::format("{} expects NAME=VALUE, got '{}'", flag, text));
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

AttackKind attack_kind(const std::string& name) {
  auto kind = parse_attack(name);
  if (!kind || *kind == AttackKind::kNone) throw ConfigError("unknown attack '" + name + "'");
  return *kind;
}

// Config file first, then flags on top.
RunConfig build_config(const Flags& f) {
  RunConfig config = f.config.empty() ? RunConfig{} : RunConfig::load(f.config);
  if (!f.corpus.empty()) config.corpus_paths.assign(f.corpus.begin(), f.corpus.end());
  if (!f.subtask.empty()) {
    auto s = parse_subtask(f.subtask);
    if (!s) throw ConfigError("--subtask must be A, B or custom");
    config.subtask = *s;
  }
  if (!f.filter.empty()) config.filter = FieldPredicate::parse(f.filter);
  if (!f.axis.empty()) {
    auto a = parse_axis(f.axis);
    if (!a) throw ConfigError("--axis must be domain or attack");
    config.axis = *a;
  }
  if (!f.seed.empty()) {
    std::size_t used = 0;
    try {
      config.master_seed = std::stoull(f.seed, &used, 0);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != f.seed.size()) throw ConfigError("--seed must be an unsigned integer");
  }
  if (!f.attacks.empty()) {
    config.attacks.clear();
    for (const std::string& name : f.attacks) {
      const AttackKind kind = attack_kind(name);
      config.attacks.push_back({kind, default_theta(kind)});
    }
  }
  if (!f.thetas.empty()) {
    if (config.attacks.empty()) config.attacks = config.effective_attacks();
    for (const std::string& item : f.thetas) {
      auto [name, value] = split_assignment(item, "--theta");
      const AttackKind kind = attack_kind(name);
      double theta = 0.0;
      try {
        theta = std::stod(value);
      } catch (const std::exception&) {
        throw ConfigError("--theta value for " + name + " is not a number");
      }
      bool found = false;
      for (AttackSetting& a : config.attacks) {
        if (a.kind == kind) {
          a.theta = theta;
          found = true;
        }
      }
      if (!found) config.attacks.push_back({kind, theta});
    }
  }
  if (!f.resources.empty()) config.resources_dir = fs::path(f.resources);
  if (!f.paraphrase_command.empty()) {
    config.paraphrase.provider = "external-command";
    config.paraphrase.command = f.paraphrase_command;
  }
  if (!f.paraphrase_url.empty()) {
    config.paraphrase.provider = "http-endpoint";
    config.paraphrase.url = f.paraphrase_url;
  }
  auto replace_detector = [&](DetectorHandle handle) {
    for (DetectorHandle& d : config.detectors) {
      if (d.detector_id == handle.detector_id) {
        d = std::move(handle);
        return;
      }
    }
    config.detectors.push_back(std::move(handle));
  };
  for (const std::string& item : f.score_files) {
    auto [id, path] = split_assignment(item, "--scores");
    DetectorHandle h;
    h.detector_id = id;
    h.kind = DetectorKind::kScoresFile;
    h.path = path;
    replace_detector(std::move(h));
  }
  for (const std::string& item : f.builtin_detectors) {
    DetectorHandle h;
    h.kind = DetectorKind::kBuiltinFrequency;
    const auto eq = item.find('=');
    h.detector_id = item.substr(0, eq);
    if (eq != std::string::npos) h.path = item.substr(eq + 1);
    replace_detector(std::move(h));
  }
  for (const std::string& item : f.remote_detectors) {
    auto [id, url] = split_assignment(item, "--remote");
    DetectorHandle h;
    h.detector_id = id;
    h.kind = DetectorKind::kRemoteEndpoint;
    h.remote.url = url;
    replace_detector(std::move(h));
  }
  if (!f.only_detectors.empty()) {
    std::vector<DetectorHandle> kept;
    for (const std::string& id : f.only_detectors) {
      auto it = std::find_if(config.detectors.begin(), config.detectors.end(),
                             [&](const DetectorHandle& d) { return d.detector_id == id; });
      if (it == config.detectors.end()) throw ConfigError("--detector: no detector named '" + id + "'");
      kept.push_back(*it);
    }
    config.detectors = std::move(kept);
  }
  if (f.target_fpr) config.search.target_fpr = *f.target_fpr;
  if (f.epsilon) config.search.epsilon = *f.epsilon;
  if (f.max_iters) config.search.max_iters = *f.max_iters;
  if (!f.out.empty()) config.output_dir = f.out;
  if (!f.formats.empty()) {
    config.report_formats.clear();
    for (const std::string& name : f.formats) {
      auto format = parse_report_format(name);
      if (!format) throw ConfigError("unknown report format '" + name + "'");
      config.report_formats.push_back(*format);
    }
  }
  if (!f.team_map.empty()) config.team_map = fs::path(f.team_map);
  config.validate();
  return config;
}

Corpus load_inputs(const RunConfig& config) {
  if (config.corpus_paths.empty()) throw ConfigError("no corpus given (use --corpus or the config file)");
  return load_corpora(config.corpus_paths);
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
}

void print_written(const fs::path& dir, const std::vector<std::string>& files) {
  for (const std::string& f : files) std::cout << (dir / f).string() << '\n';
}

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("-c,--config", f.config, "Run configuration (JSON)");
  cmd->add_option("--corpus", f.corpus, "Corpus file(s); replaces the configured list");
  cmd->add_option("--subtask", f.subtask, "A, B or custom");
  cmd->add_option("--filter", f.filter, "Field constraints, e.g. domain=news|wiki,model=gpt4");
  cmd->add_option("--out", f.out, "Output directory");
}

void add_detector_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--scores", f.score_files, "ID=PATH score file detector");
  cmd->add_option("--builtin", f.builtin_detectors, "ID[=FREQ_TABLE] built-in frequency scorer");
  cmd->add_option("--remote", f.remote_detectors, "ID=URL remote scoring endpoint");
  cmd->add_option("--detector", f.only_detectors, "Run only the named detector(s)");
  cmd->add_option("--target-fpr", f.target_fpr, "Target false-positive rate");
  cmd->add_option("--epsilon", f.epsilon, "Search tolerance");
  cmd->add_option("--max-iters", f.max_iters, "Search iteration limit");
}

int run(int argc, char** argv) {
  CLI::App app{"Adversarial evaluation toolkit for machine-generated-text detectors"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);
  Flags f;

  std::vector<std::string> validate_paths;
  bool strict = false;
  auto* validate = app.add_subcommand("validate", "Check corpus files against the schema");
  validate->add_option("corpus", validate_paths, "Corpus file(s)")->required();
  validate->add_flag("--strict", strict, "Treat profile warnings as errors");

  std::vector<std::string> profile_paths;
  bool profile_json = false;
  auto* profile = app.add_subcommand("profile", "Count documents per domain/model/decoding/attack");
  profile->add_option("corpus", profile_paths, "Corpus file(s)")->required();
  profile->add_flag("--json", profile_json, "Machine-readable output");

  auto* attack = app.add_subcommand("attack", "Generate attacked variants of machine documents");
  add_run_flags(attack, f);
  attack->add_option("--seed", f.seed, "Master seed (decimal or 0x-hex)");
  attack->add_option("--attack", f.attacks, "Attack(s) to apply; default all eleven");
  attack->add_option("--theta", f.thetas, "KIND=FRACTION override");
  attack->add_option("--resources", f.resources, "Directory with attack dictionaries");
  attack->add_option("--paraphrase-command", f.paraphrase_command, "External paraphrase command");
  attack->add_option("--paraphrase-url", f.paraphrase_url, "HTTP paraphrase endpoint");

  auto* calibrate = app.add_subcommand("calibrate", "Search per-domain thresholds at the target FPR");
  add_run_flags(calibrate, f);
  add_detector_flags(calibrate, f);

  auto* evaluate = app.add_subcommand("evaluate", "Calibrate, then compute TPR cells, totals and sigma");
  add_run_flags(evaluate, f);
  add_detector_flags(evaluate, f);
  evaluate->add_option("--axis", f.axis, "domain or attack");
  evaluate->add_option("--format", f.formats, "delimited, aligned-text, markdown-table");
  evaluate->add_option("--team-map", f.team_map, "submission_id -> team_id table for the ranking");

  std::string results_path;
  std::string report_format = "aligned-text";
  std::string report_out;
  auto* report = app.add_subcommand("report", "Render a results table");
  report->add_option("results", results_path, "results.tsv written by evaluate")->required();
  report->add_option("--format", report_format, "delimited, aligned-text, markdown-table");
  report->add_option("--team-map", f.team_map, "submission_id -> team_id table for the ranking");
  report->add_option("-o,--output", report_out, "Write to a file instead of standard output");

  SyntheticCorpusOptions synth_options;
  std::string synth_out;
  std::string synth_scores;
  std::string synth_detector = "separable";
  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus (and optional separable scores)");
  synth->add_option("--humans-per-domain", synth_options.humans_per_domain, "Human documents per domain");
  synth->add_option("--sentences", synth_options.sentences_per_document, "Sentences per document");
  synth->add_option("--seed", synth_options.seed, "Generator seed");
  synth->add_option("-o,--output", synth_out, "Corpus file (.jsonl or .tsv)")->required();
  synth->add_option("--scores", synth_scores, "Also write separable scores to this file");
  synth->add_option("--detector-id", synth_detector, "Detector id for --scores");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*validate) {
    std::vector<fs::path> paths(validate_paths.begin(), validate_paths.end());
    const Corpus corpus = load_corpora(paths);
    const CorpusProfile p = profile_corpus(corpus);
    print_warnings(p.warnings);
    if (!corpus.lineage_known()) {
      std::cerr << "warning: adv_source_id column absent; attack lineage not checked\n";
    }
    std::cout << fmt::format("ok: {} documents ({} human, {} machine)\n", corpus.size(), p.human_total,
                             p.machine_total);
    return strict && !p.warnings.empty() ? kIntegrity : kOk;
  }
  if (*profile) {
    std::vector<fs::path> paths(profile_paths.begin(), profile_paths.end());
    const CorpusProfile p = profile_corpus(load_corpora(paths));
    if (profile_json) {
      nlohmann::ordered_json j;
      j["documents"] = p.total();
      j["human"] = p.human_total;
      j["machine"] = p.machine_total;
      j["unattacked_machine"] = p.unattacked_machine_total;
      j["machine_to_human_ratio"] = p.machine_to_human_ratio.str();
      j["attack_multiplier"] = p.attack_multiplier.str();
      nlohmann::ordered_json humans = nlohmann::ordered_json::object();
      for (const auto& [d, n] : p.human_count) humans[std::string(to_string(d))] = n;
      j["human_per_domain"] = humans;
      nlohmann::ordered_json cells = nlohmann::ordered_json::array();
      for (const auto& [c, n] : p.counts) {
        cells.push_back({{"domain", to_string(c.domain)},
                         {"model", to_string(c.model)},
                         {"decoding", to_string(c.decoding)},
                         {"attack", to_string(c.attack)},
                         {"count", n}});
      }
      j["cells"] = cells;
      j["warnings"] = p.warnings;
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << fmt::format("documents {}  human {}  machine {}  ratio {}  attack multiplier {}\n",
                               p.total(), p.human_total, p.machine_total, p.machine_to_human_ratio.str(),
                               p.attack_multiplier.str());
      for (const auto& [d, n] : p.human_count) std::cout << fmt::format("human\t{}\t{}\n", to_string(d), n);
      for (const auto& [c, n] : p.counts) {
        std::cout << fmt::format("cell\t{}\t{}\t{}\t{}\t{}\n", to_string(c.domain), to_string(c.model),
                                 to_string(c.decoding), to_string(c.attack), n);
      }
      print_warnings(p.warnings);
    }
    return kOk;
  }
  if (*attack) {
    if (f.subtask.empty() && f.config.empty()) f.subtask = "B";
    const RunConfig config = build_config(f);
    const AttackRun result = run_attack(config, load_inputs(config), make_attack_context(config));
    print_warnings(result.warnings);
    print_written(config.output_dir, write_attack_outputs(config, result, config.output_dir));
    return kOk;
  }
  if (*calibrate) {
    const RunConfig config = build_config(f);
    const CalibrationRun result = run_calibrate(config, load_inputs(config));
    print_warnings(result.warnings);
    print_written(config.output_dir, write_calibration_outputs(config, result, config.output_dir));
    return kOk;
  }
  if (*evaluate) {
    const RunConfig config = build_config(f);
    const EvaluationRun result = run_evaluate(config, load_inputs(config));
    print_warnings(result.calibration.warnings);
    print_written(config.output_dir, write_evaluation_outputs(config, result, config.output_dir));
    return kOk;
  }
  if (*report) {
    auto format = parse_report_format(report_format);
    if (!format) throw ConfigError("unknown report format '" + report_format + "'");
    std::ifstream in(results_path, std::ios::binary);
    if (!in) throw Error("cannot open " + results_path);
    const ResultsTable table = parse_results(in, results_path);
    std::vector<TeamStanding> ranking;
    if (!f.team_map.empty()) ranking = rank_teams(submissions_from(table), load_team_map(f.team_map));
    const std::string text = render_report(table, *format, ranking);
    if (report_out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(report_out, std::ios::binary | std::ios::trunc);
      if (!out) throw Error("cannot write " + report_out);
      out << text;
    }
    return kOk;
  }
  if (*synth) {
    const Corpus corpus = make_synthetic_corpus(synth_options);
    save_corpus(corpus, synth_out, format_for_path(synth_out));
    std::cout << synth_out << '\n';
    if (!synth_scores.empty()) {
      std::ofstream out(synth_scores, std::ios::binary | std::ios::trunc);
      if (!out) throw Error("cannot write " + synth_scores);
      write_scores(out, separable_scores(corpus, synth_detector, synth_options.seed));
      std::cout << synth_scores << '\n';
    }
    return kOk;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kSchema;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity error: " << e.what() << '\n';
    return kIntegrity;
  } catch (const EvaluationError& e) {
    std::cerr << "evaluation error: " << e.what() << '\n';
    return kEvaluation;
  } catch (const DetectorError& e) {
    std::cerr << "detector error: " << e.what() << '\n';
    return kExternal;
  } catch (const ProviderError& e) {
    std::cerr << "paraphrase error: " << e.what() << '\n';
    return kExternal;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return kExternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
