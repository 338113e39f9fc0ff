#ifndef DETBENCH_PARAPHRASE_H_
#define DETBENCH_PARAPHRASE_H_

#include <chrono>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "detbench/resources.h"

namespace detbench {

// Rewrites a whole document. Implementations must be safe to call from
// several threads at once.
class ParaphraseProvider {
 public:
  virtual ~ParaphraseProvider() = default;
  virtual std::string paraphrase(std::string_view text) = 0;
  virtual std::string name() const = 0;
};

// Deterministic rule-based rewriter: discourse connectives are replaced from
// connectives.tsv, then every remaining synonym-lexicon headword is replaced
// by the first synonym of its first listed sense. This is a stand-in for a
// neural paraphraser and is not equivalent to one.
class BuiltinParaphraser final : public ParaphraseProvider {
 public:
  explicit BuiltinParaphraser(ResourceSet resources)
      : resources_(std::move(resources)) {}

  std::string paraphrase(std::string_view text) override;
  std::string name() const override { return "builtin-stub"; }

 private:
  ResourceSet resources_;
};

// Segment exchange used by the external providers. Sentences are sent one
// per line (tsv::escape applied, so embedded newlines travel as \n) and the
// provider must return exactly as many segments.
std::string encode_segments(const std::vector<std::string>& segments);
std::vector<std::string> decode_segments(std::string_view payload);

// Runs `/bin/sh -c command`, writes the encoded segments to its standard
// input, and reads the same number of segments from standard output. A
// non-zero exit status, a timeout or a segment-count mismatch raise
// ProviderError.
class CommandParaphraser final : public ParaphraseProvider {
 public:
  CommandParaphraser(std::string command, std::chrono::milliseconds timeout)
      : command_(std::move(command)), timeout_(timeout) {}

  std::string paraphrase(std::string_view text) override;
  std::string name() const override { return "external-command"; }

 private:
  std::string command_;
  std::chrono::milliseconds timeout_;
};

// POSTs {"segments": [...]} as JSON to `url` and expects
// {"segments": [...]} with the same length back under HTTP 200.
class HttpParaphraser final : public ParaphraseProvider {
 public:
  HttpParaphraser(std::string url, std::chrono::milliseconds timeout)
      : url_(std::move(url)), timeout_(timeout) {}

  std::string paraphrase(std::string_view text) override;
  std::string name() const override { return "http-endpoint"; }

 private:
  std::string url_;
  std::chrono::milliseconds timeout_;
};

// Splits "http://host:port/path" into origin and path. Throws ConfigError.
struct UrlParts {
  std::string origin;  // scheme://host[:port]
  std::string path;    // at least "/"
};
UrlParts split_url(std::string_view url);

}  // namespace detbench

#endif  // DETBENCH_PARAPHRASE_H_
