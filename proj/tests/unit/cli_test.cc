#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <nlohmann/json.hpp>

#include "support/temp_dir.h"

namespace {

using detbench::testing::read_file;
using detbench::testing::TempDir;
using detbench::testing::write_file;

struct Outcome {
  int code = -1;
  std::string output;
};

Outcome run(const std::string& args) {
  const std::string command = std::string(DETBENCH_CLI_PATH) + " " + args + " 2>&1";
  Outcome out;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) return out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.output.append(buf.data(), n);
  const int status = ::pclose(pipe);
  out.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    auto synth = run("synth --humans-per-domain 20 --sentences 3 --seed 4 -o " +
                     (dir / "corpus.jsonl").string() + " --scores " +
                     (dir / "scores.tsv").string() + " --detector-id sep");
    ASSERT_EQ(synth.code, 0) << synth.output;
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }

  TempDir dir;
};

TEST_F(Cli, ValidateAndProfile) {
  auto v = run("validate " + path("corpus.jsonl"));
  EXPECT_EQ(v.code, 0) << v.output;
  auto p = run("profile --json " + path("corpus.jsonl"));
  ASSERT_EQ(p.code, 0) << p.output;
  auto j = nlohmann::json::parse(p.output);
  EXPECT_EQ(j.at("human"), 160);
}

TEST_F(Cli, ExitCodesByErrorClass) {
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("evaluate --subtask Z --corpus " + path("corpus.jsonl")).code, 2);

  write_file(dir / "bad.jsonl", "{broken\n");
  EXPECT_EQ(run("validate " + path("bad.jsonl")).code, 3);

  write_file(dir / "schema.jsonl", R"({"id":"x","text":"t"})" "\n");
  EXPECT_EQ(run("validate " + path("schema.jsonl")).code, 4);

  write_file(dir / "dangling.jsonl",
             R"({"id":"m","text":"t","label":"machine","model":"gpt2","domain":"news",)"
             R"("decoding":"greedy","attack":"none","source_id":"gone","adv_source_id":""})"
             "\n");
  auto integrity = run("validate " + path("dangling.jsonl"));
  EXPECT_EQ(integrity.code, 5);
  EXPECT_NE(integrity.output.find("gone"), std::string::npos);

  write_file(dir / "other.tsv", "doc_id\tdetector_id\tscore\nnope\tsep\t1\n");
  auto missing = run("evaluate --corpus " + path("corpus.jsonl") + " --scores sep=" +
                     path("other.tsv") + " --out " + path("o"));
  EXPECT_EQ(missing.code, 7) << missing.output;
}

TEST_F(Cli, AttackUnderSubtaskAIsAUsageError) {
  auto r = run("attack --subtask A --corpus " + path("corpus.jsonl") + " --out " + path("a"));
  EXPECT_EQ(r.code, 2) << r.output;
}

TEST_F(Cli, EvaluateSeparable) {
  auto r = run("evaluate --corpus " + path("corpus.jsonl") + " --scores sep=" +
               path("scores.tsv") + " --format aligned-text --format delimited --out " +
               path("eval"));
  ASSERT_EQ(r.code, 0) << r.output;
  const std::string report = read_file(dir / "eval" / "report.txt");
  EXPECT_NE(report.find("100.0 (0.0)"), std::string::npos) << report;
  auto rendered = run("report " + path("eval/results.tsv") + " --format delimited");
  ASSERT_EQ(rendered.code, 0) << rendered.output;
  EXPECT_EQ(rendered.output, read_file(dir / "eval" / "report.tsv"));
}

TEST_F(Cli, AttackReplayIsByteIdentical) {
  for (const char* out : {"r1", "r2"}) {
    auto r = run("attack --corpus " + path("corpus.jsonl") +
                 " --attack homoglyph --attack number_swap --theta number_swap=1.0 --out " +
                 path(out));
    ASSERT_EQ(r.code, 0) << r.output;
  }
  for (const char* name : {"attacked_corpus.jsonl", "attack_sites.tsv", "manifest.json"}) {
    EXPECT_EQ(read_file(dir / "r1" / name), read_file(dir / "r2" / name)) << name;
  }
  auto v = run("validate " + path("r1/attacked_corpus.jsonl"));
  EXPECT_EQ(v.code, 0) << v.output;
}

TEST_F(Cli, ConfigFileWithFlagOverrides) {
  write_file(dir / "run.json", R"({
    "corpus": "corpus.jsonl",
    "subtask": "A",
    "detectors": [{"id": "sep", "kind": "scores_file", "path": "scores.tsv"}],
    "output_dir": "from-config",
    "report_formats": ["markdown-table"]
  })");
  auto r = run("evaluate --config " + path("run.json") + " --out " + path("from-flag"));
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(std::filesystem::exists(dir / "from-flag" / "report.md"));
  EXPECT_FALSE(std::filesystem::exists(dir / "from-config"));
  write_file(dir / "bad.json", R"({"corpus": "corpus.jsonl", "colour": 1})");
  EXPECT_EQ(run("evaluate --config " + path("bad.json")).code, 2);
}

}  // namespace
