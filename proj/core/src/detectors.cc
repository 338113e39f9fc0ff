#include "detbench/detectors.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "detbench/error.h"
#include "detbench/paraphrase.h"
#include "detbench/parallel.h"
#include "detbench/resources.h"
#include "detbench/text.h"
#include "detbench/tsv.h"
#include "detbench/unicode.h"

namespace detbench {

namespace {

bool is_transient(int status) {
  return status == 408 || status == 425 || status == 429 || (status >= 500 && status <= 599);
}

class TransientFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> score_batch(const DetectorHandle& handle, const UrlParts& url,
                                std::span<const Document> batch) {
  nlohmann::json request;
  request["detector_id"] = handle.detector_id;
  nlohmann::json& docs = request["documents"];
  docs = nlohmann::json::array();
  for (const Document& doc : batch) docs.push_back({{"id", doc.id}, {"text", doc.text}});
  const std::string body = request.dump();

  httplib::Client client(url.origin);
  const auto timeout = handle.remote.timeout;
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());
  httplib::Headers headers;
  if (!handle.remote.credential.empty()) {
    headers.emplace("Authorization", "Bearer " + handle.remote.credential);
  }

  auto response = client.Post(url.path, headers, body, "application/json");
  if (!response) {
    throw TransientFailure(httplib::to_string(response.error()));
  }
  if (is_transient(response->status)) {
    throw TransientFailure("HTTP " + std::to_string(response->status));
  }
  if (response->status != 200) {
    throw DetectorError("detector '" + handle.detector_id + "' endpoint returned HTTP " +
                        std::to_string(response->status));
  }

  std::unordered_map<std::string, double> by_id;
  try {
    const nlohmann::json reply = nlohmann::json::parse(response->body);
    for (const nlohmann::json& item : reply.at("scores")) {
      const double score = item.at("score").get<double>();
      if (!std::isfinite(score)) throw DetectorError("non-finite score");
      if (!by_id.emplace(item.at("id").get<std::string>(), score).second) {
        throw DetectorError("duplicate id in response");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw DetectorError("detector '" + handle.detector_id + "': malformed response: " + e.what());
  } catch (const DetectorError& e) {
    throw DetectorError("detector '" + handle.detector_id + "': " + e.what());
  }
  if (by_id.size() != batch.size()) {
    throw DetectorError("detector '" + handle.detector_id + "': response has " +
                        std::to_string(by_id.size()) + " scores for " +
                        std::to_string(batch.size()) + " documents");
  }
  std::vector<double> out;
  out.reserve(batch.size());
  for (const Document& doc : batch) {
    auto it = by_id.find(doc.id);
    if (it == by_id.end()) {
      throw DetectorError("detector '" + handle.detector_id + "': no score for '" + doc.id + "'");
    }
    out.push_back(it->second);
  }
  return out;
}

std::vector<ScoreRecord> remote_scores(const DetectorHandle& handle,
                                       std::span<const Document> documents) {
  const UrlParts url = split_url(handle.remote.url);
  const std::size_t size = handle.remote.max_batch;
  const std::size_t batches = (documents.size() + size - 1) / size;
  std::vector<double> scores(documents.size());
  parallel_for(
      batches,
      [&](std::size_t b) {
        const std::span<const Document> batch =
            documents.subspan(b * size, std::min(size, documents.size() - b * size));
        auto backoff = handle.remote.initial_backoff;
        for (int attempt = 0;; ++attempt) {
          try {
            const std::vector<double> got = score_batch(handle, url, batch);
            std::copy(got.begin(), got.end(), scores.begin() + static_cast<std::ptrdiff_t>(b * size));
            return;
          } catch (const TransientFailure& e) {
            if (attempt >= handle.remote.retries) {
              throw DetectorError("detector '" + handle.detector_id + "' failed after " +
                                  std::to_string(attempt + 1) + " attempts: " + e.what());
            }
          }
          std::this_thread::sleep_for(backoff);
          backoff = std::min(backoff * 2, handle.remote.max_backoff);
        }
      },
      handle.remote.max_in_flight);
  std::vector<ScoreRecord> out;
  out.reserve(documents.size());
  for (std::size_t i = 0; i < documents.size(); ++i) {
    out.push_back({documents[i].id, handle.detector_id, scores[i]});
  }
  return out;
}

}  // namespace

std::string_view to_string(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::kScoresFile:
      return "scores_file";
    case DetectorKind::kRemoteEndpoint:
      return "remote_endpoint";
    case DetectorKind::kBuiltinFrequency:
      return "builtin_frequency";
  }
  return "scores_file";
}

std::optional<DetectorKind> parse_detector_kind(std::string_view text) {
  for (DetectorKind k : {DetectorKind::kScoresFile, DetectorKind::kRemoteEndpoint,
                         DetectorKind::kBuiltinFrequency}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

void DetectorHandle::validate() const {
  if (detector_id.empty()) throw ConfigError("detector_id must not be empty");
  const std::string where = "detector '" + detector_id + "': ";
  switch (kind) {
    case DetectorKind::kScoresFile:
      if (path.empty()) throw ConfigError(where + "scores_file needs a path");
      break;
    case DetectorKind::kRemoteEndpoint:
      split_url(remote.url);
      if (remote.timeout.count() <= 0) throw ConfigError(where + "timeout must be positive");
      if (remote.max_batch == 0) throw ConfigError(where + "max_batch must be at least 1");
      if (remote.retries < 0) throw ConfigError(where + "retries must not be negative");
      if (remote.max_in_flight == 0) throw ConfigError(where + "max_in_flight must be at least 1");
      if (remote.initial_backoff.count() < 0 || remote.max_backoff < remote.initial_backoff) {
        throw ConfigError(where + "invalid backoff bounds");
      }
      break;
    case DetectorKind::kBuiltinFrequency:
      break;
  }
}

std::vector<ScoreRecord> select_scores(std::span<const ScoreRecord> pool,
                                       std::string_view detector_id,
                                       std::span<const Document> documents) {
  std::unordered_map<std::string_view, double> by_id;
  for (const ScoreRecord& r : pool) {
    if (r.detector_id == detector_id) by_id.emplace(r.doc_id, r.score);
  }
  std::vector<ScoreRecord> out;
  out.reserve(documents.size());
  for (const Document& doc : documents) {
    auto it = by_id.find(doc.id);
    if (it == by_id.end()) {
      throw DetectorError("detector '" + std::string(detector_id) + "' has no score for document '" +
                          doc.id + "'");
    }
    out.push_back({doc.id, std::string(detector_id), it->second});
  }
  return out;
}

std::vector<ScoreRecord> get_scores(const DetectorHandle& handle,
                                    std::span<const Document> documents) {
  handle.validate();
  switch (handle.kind) {
    case DetectorKind::kScoresFile: {
      const std::vector<ScoreRecord> pool = load_scores(handle.path);
      return select_scores(pool, handle.detector_id, documents);
    }
    case DetectorKind::kRemoteEndpoint:
      return remote_scores(handle, documents);
    case DetectorKind::kBuiltinFrequency: {
      const FrequencyTable table =
          handle.path.empty() ? FrequencyTable::builtin() : FrequencyTable::load(handle.path);
      std::vector<ScoreRecord> out(documents.size());
      parallel_for(documents.size(), [&](std::size_t i) {
        try {
          out[i] = {documents[i].id, handle.detector_id,
                    builtin_frequency_score(table, documents[i].text)};
        } catch (const DetectorError& e) {
          throw DetectorError("document '" + documents[i].id + "': " + e.what());
        }
      });
      return out;
    }
  }
  return {};
}

FrequencyTable FrequencyTable::parse(std::string_view content, std::string_view source_name) {
  FrequencyTable table;
  std::istringstream in{std::string(content)};
  tsv::Reader reader(in);
  std::uint64_t max_count = 0;
  while (auto row = reader.next()) {
    const std::string where = std::string(source_name) + ":" + std::to_string(row->line) + ": ";
    if (row->fields.size() != 2) throw DetectorError(where + "expected token<TAB>count");
    if (!unicode::is_valid_utf8(row->fields[0])) throw DetectorError(where + "invalid UTF-8");
    std::u32string token = unicode::to_lower(unicode::decode_utf8(row->fields[0]));
    std::uint64_t count = 0;
    try {
      count = tsv::parse_count(row->fields[1], row->line);
    } catch (const ParseError&) {
      throw DetectorError(where + "count must be a non-negative integer");
    }
    if (token.empty() || count == 0) throw DetectorError(where + "empty token or zero count");
    if (!table.counts_.emplace(std::move(token), count).second) {
      throw DetectorError(where + "duplicate token");
    }
    table.total_ += count;
    max_count = std::max(max_count, count);
  }
  if (table.total_ == 0) throw DetectorError(std::string(source_name) + ": empty frequency table");
  const double n = static_cast<double>(table.total_);
  table.raw_min_ = -std::log(static_cast<double>(max_count) / n);
  table.raw_max_ = -std::log(0.5 / n);
  return table;
}

FrequencyTable FrequencyTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DetectorError("cannot open frequency table " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

FrequencyTable FrequencyTable::builtin() {
  static const FrequencyTable table =
      parse(builtin_resource("word_frequencies.tsv"), "builtin:word_frequencies.tsv");
  return table;
}

double FrequencyTable::probability(std::u32string_view lowercase_token) const {
  auto it = counts_.find(lowercase_token);
  const double count = it == counts_.end() ? 0.5 : static_cast<double>(it->second);
  return count / static_cast<double>(total_);
}

double builtin_frequency_score(const FrequencyTable& table, std::string_view text) {
  const std::u32string cps = unicode::decode_utf8(text);
  const std::vector<Span> tokens = word_tokens(cps);
  if (tokens.empty()) throw DetectorError("text has no word tokens");
  double sum = 0.0;
  for (const Span& tok : tokens) {
    sum -= std::log(table.probability(unicode::to_lower(std::u32string_view(cps).substr(tok.begin, tok.size()))));
  }
  const double raw = sum / static_cast<double>(tokens.size());
  return (raw - table.raw_floor()) / (table.raw_ceiling() - table.raw_floor());
}

}  // namespace detbench
