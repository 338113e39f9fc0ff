#include "detbench/text.h"

#include "detbench/error.h"
#include "detbench/unicode.h"

namespace detbench {
namespace {

bool is_terminal(char32_t cp) {
  return cp == U'.' || cp == U'!' || cp == U'?' || cp == 0x2026;
}

bool is_closer(char32_t cp) {
  switch (cp) {
    case U'"':
    case U'\'':
    case U')':
    case U']':
    case U'}':
    case 0x2019:  // right single quotation mark
    case 0x201D:  // right double quotation mark
    case 0x00BB:  // right-pointing double angle quotation mark
      return true;
    default:
      return false;
  }
}

}  // namespace

std::vector<Span> word_tokens(std::u32string_view text) {
  std::vector<Span> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!unicode::is_word_char(text[i])) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    while (i < text.size() && unicode::is_word_char(text[i])) ++i;
    tokens.push_back({begin, i});
  }
  return tokens;
}

std::vector<Span> sentence_breaks(std::u32string_view text) {
  std::vector<Span> breaks;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_terminal(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < text.size() && is_terminal(text[j])) ++j;
    while (j < text.size() && is_closer(text[j])) ++j;
    std::size_t k = j;
    while (k < text.size() && unicode::is_whitespace(text[k])) ++k;
    if (k > j && k < text.size()) breaks.push_back({j, k});
    i = k > j ? k : j;
  }
  return breaks;
}

std::u32string apply_casing(std::u32string_view source,
                            std::u32string_view replacement) {
  std::size_t cased = 0;
  std::size_t upper = 0;
  for (char32_t cp : source) {
    if (unicode::is_cased(cp)) {
      ++cased;
      if (unicode::is_upper(cp)) ++upper;
    }
  }
  if (cased >= 2 && upper == cased) return unicode::to_upper(replacement);
  std::u32string out(replacement);
  if (!source.empty() && unicode::is_upper(source.front()) && !out.empty()) {
    out.front() = unicode::to_upper(out.front());
  }
  return out;
}

std::string SentenceSplit::join() const { return join(sentences); }

std::string SentenceSplit::join(const std::vector<std::string>& replacement) const {
  if (replacement.size() != sentences.size()) {
    throw ProviderError("expected " + std::to_string(sentences.size()) +
                        " segments, got " + std::to_string(replacement.size()));
  }
  std::string out = leading;
  for (std::size_t i = 0; i < replacement.size(); ++i) {
    if (i > 0) out += separators[i - 1];
    out += replacement[i];
  }
  out += trailing;
  return out;
}

SentenceSplit split_sentences(std::string_view text) {
  const std::u32string cps = unicode::decode_utf8(text);
  SentenceSplit split;
  std::size_t begin = 0;
  while (begin < cps.size() && unicode::is_whitespace(cps[begin])) ++begin;
  std::size_t end = cps.size();
  while (end > begin && unicode::is_whitespace(cps[end - 1])) --end;
  split.leading = unicode::encode_utf8(std::u32string_view(cps).substr(0, begin));
  split.trailing = unicode::encode_utf8(std::u32string_view(cps).substr(end));
  if (begin == end) return split;

  const std::u32string_view body = std::u32string_view(cps).substr(begin, end - begin);
  std::size_t cursor = 0;
  for (const Span& brk : sentence_breaks(body)) {
    split.sentences.push_back(
        unicode::encode_utf8(body.substr(cursor, brk.begin - cursor)));
    split.separators.push_back(unicode::encode_utf8(body.substr(brk.begin, brk.size())));
    cursor = brk.end;
  }
  split.sentences.push_back(unicode::encode_utf8(body.substr(cursor)));
  return split;
}

}  // namespace detbench
