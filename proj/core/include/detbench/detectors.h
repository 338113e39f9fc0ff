#ifndef DETBENCH_DETECTORS_H_
#define DETBENCH_DETECTORS_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "detbench/calibration.h"
#include "detbench/corpus.h"

namespace detbench {

enum class DetectorKind : std::uint8_t {
  kScoresFile,
  kRemoteEndpoint,
  kBuiltinFrequency,
};

std::string_view to_string(DetectorKind kind);
std::optional<DetectorKind> parse_detector_kind(std::string_view text);

// Remote scoring protocol (JSON over HTTP, UTF-8):
//
//   POST <url>
//   {"detector_id": "...", "documents": [{"id": "...", "text": "..."}, ...]}
//
//   200 {"scores": [{"id": "...", "score": <number>}, ...]}
//
// The response must carry exactly one finite score per requested id.
// 408, 425, 429 and 5xx responses, connection failures and timeouts are
// transient and retried with exponential backoff; any other status fails
// the run. When the credential is non-empty it is sent as
// "Authorization: Bearer <credential>".
struct RemoteSettings {
  std::string url;
  std::chrono::milliseconds timeout{10000};
  std::size_t max_batch = 64;
  int retries = 3;
  std::chrono::milliseconds initial_backoff{100};
  std::chrono::milliseconds max_backoff{5000};
  std::size_t max_in_flight = 4;
  std::string credential;
};

// Environment variable read for the remote credential.
inline constexpr const char* kCredentialEnvVar = "DETBENCH_API_KEY";

struct DetectorHandle {
  std::string detector_id;
  DetectorKind kind = DetectorKind::kScoresFile;
  std::filesystem::path path;  // score file or frequency table
  RemoteSettings remote;

  // Throws ConfigError.
  void validate() const;
};

// One record per document, in input order.
std::vector<ScoreRecord> get_scores(const DetectorHandle& handle,
                                    std::span<const Document> documents);

// Picks the records of `detector_id` for `documents` in order. Throws
// DetectorError naming the first id without a record.
std::vector<ScoreRecord> select_scores(std::span<const ScoreRecord> pool,
                                       std::string_view detector_id,
                                       std::span<const Document> documents);

// Word-frequency scorer.
//
// Tokens are lowercased word tokens. With N the sum of all counts, a token's
// probability is count/N, or 0.5/N when out of vocabulary. The raw score is
// the mean of -ln(p) over the text's tokens; it is mapped affinely so that a
// text made only of the most frequent token scores 0 and a text made only
// of out-of-vocabulary tokens scores 1.
class FrequencyTable {
 public:
  static FrequencyTable parse(std::string_view content,
                              std::string_view source_name);
  static FrequencyTable load(const std::filesystem::path& path);
  static FrequencyTable builtin();

  double probability(std::u32string_view lowercase_token) const;
  double raw_floor() const { return raw_min_; }     // -ln(p_max)
  double raw_ceiling() const { return raw_max_; }   // -ln(0.5 / N)
  std::uint64_t total_count() const { return total_; }

 private:
  std::map<std::u32string, std::uint64_t, std::less<>> counts_;
  std::uint64_t total_ = 0;
  double raw_min_ = 0.0;
  double raw_max_ = 0.0;
};

// Throws DetectorError when `text` has no word tokens.
double builtin_frequency_score(const FrequencyTable& table, std::string_view text);

}  // namespace detbench

#endif  // DETBENCH_DETECTORS_H_
