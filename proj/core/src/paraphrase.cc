#include "detbench/paraphrase.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "detbench/error.h"
#include "detbench/text.h"
#include "detbench/tsv.h"
#include "detbench/unicode.h"

namespace detbench {

namespace {

struct Replacement {
  std::size_t begin;
  std::size_t end;
  std::u32string text;
};

bool only_whitespace(std::u32string_view text) {
  for (char32_t cp : text) {
    if (!unicode::is_whitespace(cp)) return false;
  }
  return true;
}

class Pipe {
 public:
  Pipe() {
    if (::pipe(fds_) != 0) throw ProviderError(std::string("pipe: ") + std::strerror(errno));
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  Pipe(const Pipe&) = delete;
  Pipe& operator=(const Pipe&) = delete;
  int read_end() const { return fds_[0]; }
  int write_end() const { return fds_[1]; }
  void close_read() { close_fd(fds_[0]); }
  void close_write() { close_fd(fds_[1]); }

 private:
  static void close_fd(int& fd) {
    if (fd >= 0) ::close(fd);
    fd = -1;
  }
  int fds_[2] = {-1, -1};
};

struct CommandOutput {
  int status = 0;
  std::string out;
};

CommandOutput run_command(const std::string& command, const std::string& input,
                          std::chrono::milliseconds timeout) {
  // A provider that exits without reading its input must not kill us.
  static const bool sigpipe_ignored = (::signal(SIGPIPE, SIG_IGN), true);
  (void)sigpipe_ignored;
  Pipe in;
  Pipe out;
  const pid_t pid = ::fork();
  if (pid < 0) throw ProviderError(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::dup2(in.read_end(), STDIN_FILENO);
    ::dup2(out.write_end(), STDOUT_FILENO);
    ::close(in.read_end());
    ::close(in.write_end());
    ::close(out.read_end());
    ::close(out.write_end());
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  in.close_read();
  out.close_write();
  ::fcntl(in.write_end(), F_SETFL, ::fcntl(in.write_end(), F_GETFL) | O_NONBLOCK);

  const auto deadline = std::chrono::steady_clock::now() + timeout;
  CommandOutput result;
  std::size_t written = 0;
  if (input.empty()) in.close_write();
  bool reading = true;
  bool timed_out = false;
  while (reading) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd fds[2];
    nfds_t count = 0;
    fds[count++] = {out.read_end(), POLLIN, 0};
    if (in.write_end() >= 0) fds[count++] = {in.write_end(), POLLOUT, 0};
    const int ready = ::poll(fds, count, static_cast<int>(left.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (count == 2 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const ssize_t n = ::write(in.write_end(), input.data() + written, input.size() - written);
      if (n > 0) written += static_cast<std::size_t>(n);
      if (n < 0 && errno != EAGAIN && errno != EINTR) written = input.size();
      if (written == input.size()) in.close_write();
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      char buffer[4096];
      const ssize_t n = ::read(out.read_end(), buffer, sizeof buffer);
      if (n > 0) {
        result.out.append(buffer, static_cast<std::size_t>(n));
      } else if (n == 0 || errno != EINTR) {
        reading = false;
      }
    }
  }
  in.close_write();
  if (timed_out) ::kill(pid, SIGKILL);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (timed_out) {
    throw ProviderError("paraphrase command timed out after " +
                        std::to_string(timeout.count()) + " ms");
  }
  result.status = status;
  return result;
}

}  // namespace

std::string BuiltinParaphraser::paraphrase(std::string_view text) {
  const std::u32string cps = unicode::decode_utf8(text);
  const std::vector<Span> tokens = word_tokens(cps);
  const PhraseMap& connectives = resources_.connectives();
  const SynonymLexicon& lexicon = resources_.synonyms();

  std::vector<std::u32string> lower;
  lower.reserve(tokens.size());
  for (const Span& tok : tokens) lower.push_back(unicode::to_lower(cps.substr(tok.begin, tok.size())));

  std::vector<Replacement> edits;
  std::size_t k = 0;
  while (k < tokens.size()) {
    bool matched = false;
    for (const PhraseMap::Entry& entry : connectives.entries()) {
      const std::size_t n = entry.tokens.size();
      if (k + n > tokens.size()) continue;
      bool ok = true;
      for (std::size_t j = 0; j < n && ok; ++j) {
        ok = lower[k + j] == entry.tokens[j];
        if (ok && j > 0) {
          const std::size_t gap_begin = tokens[k + j - 1].end;
          ok = only_whitespace(std::u32string_view(cps).substr(
              gap_begin, tokens[k + j].begin - gap_begin));
        }
      }
      if (!ok) continue;
      const std::u32string_view first = std::u32string_view(cps).substr(tokens[k].begin, tokens[k].size());
      edits.push_back({tokens[k].begin, tokens[k + n - 1].end, apply_casing(first, entry.replacement)});
      k += n;
      matched = true;
      break;
    }
    if (matched) continue;
    if (const auto* synonyms = lexicon.first_sense(lower[k])) {
      const std::u32string_view word = std::u32string_view(cps).substr(tokens[k].begin, tokens[k].size());
      edits.push_back({tokens[k].begin, tokens[k].end, apply_casing(word, synonyms->front())});
    }
    ++k;
  }

  std::u32string out;
  out.reserve(cps.size());
  std::size_t cursor = 0;
  for (const Replacement& edit : edits) {
    out.append(cps, cursor, edit.begin - cursor);
    out += edit.text;
    cursor = edit.end;
  }
  out.append(cps, cursor, std::u32string::npos);
  return unicode::encode_utf8(out);
}

std::string encode_segments(const std::vector<std::string>& segments) {
  std::string out;
  for (const std::string& segment : segments) {
    out += tsv::escape(segment);
    out += '\n';
  }
  return out;
}

std::vector<std::string> decode_segments(std::string_view payload) {
  std::vector<std::string> segments;
  while (!payload.empty()) {
    const std::size_t nl = payload.find('\n');
    std::string_view line = payload.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    try {
      segments.push_back(tsv::unescape(line, segments.size() + 1));
    } catch (const ParseError& e) {
      throw ProviderError(std::string("malformed segment: ") + e.what());
    }
    if (nl == std::string_view::npos) break;
    payload.remove_prefix(nl + 1);
  }
  return segments;
}

std::string CommandParaphraser::paraphrase(std::string_view text) {
  const SentenceSplit split = split_sentences(text);
  if (split.sentences.empty()) return std::string(text);
  const CommandOutput result = run_command(command_, encode_segments(split.sentences), timeout_);
  if (!WIFEXITED(result.status) || WEXITSTATUS(result.status) != 0) {
    const int code = WIFEXITED(result.status) ? WEXITSTATUS(result.status) : -1;
    throw ProviderError("paraphrase command exited with status " + std::to_string(code));
  }
  const std::vector<std::string> segments = decode_segments(result.out);
  if (segments.size() != split.sentences.size()) {
    throw ProviderError("paraphrase command returned " + std::to_string(segments.size()) +
                        " segments for " + std::to_string(split.sentences.size()) + " sentences");
  }
  for (const std::string& segment : segments) {
    if (!unicode::is_valid_utf8(segment)) throw ProviderError("paraphrase command returned invalid UTF-8");
  }
  return split.join(segments);
}

UrlParts split_url(std::string_view url) {
  constexpr std::string_view kScheme = "http://";
  if (!url.starts_with(kScheme)) {
    throw ConfigError("unsupported endpoint URL '" + std::string(url) + "' (expected http://host[:port]/path)");
  }
  const std::size_t slash = url.find('/', kScheme.size());
  UrlParts parts;
  parts.origin = std::string(url.substr(0, slash));
  parts.path = slash == std::string_view::npos ? "/" : std::string(url.substr(slash));
  if (parts.origin.size() == kScheme.size()) {
    throw ConfigError("endpoint URL '" + std::string(url) + "' has no host");
  }
  return parts;
}

std::string HttpParaphraser::paraphrase(std::string_view text) {
  const SentenceSplit split = split_sentences(text);
  if (split.sentences.empty()) return std::string(text);
  const UrlParts url = split_url(url_);
  httplib::Client client(url.origin);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  const nlohmann::json request = {{"segments", split.sentences}};
  auto response = client.Post(url.path, request.dump(), "application/json");
  if (!response) {
    throw ProviderError("paraphrase endpoint " + url_ + ": " + httplib::to_string(response.error()));
  }
  if (response->status != 200) {
    throw ProviderError("paraphrase endpoint " + url_ + " returned HTTP " +
                        std::to_string(response->status));
  }
  std::vector<std::string> segments;
  try {
    const nlohmann::json body = nlohmann::json::parse(response->body);
    segments = body.at("segments").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(std::string("malformed paraphrase response: ") + e.what());
  }
  if (segments.size() != split.sentences.size()) {
    throw ProviderError("paraphrase endpoint returned " + std::to_string(segments.size()) +
                        " segments for " + std::to_string(split.sentences.size()) + " sentences");
  }
  return split.join(segments);
}

}  // namespace detbench
