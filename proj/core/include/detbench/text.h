#ifndef DETBENCH_TEXT_H_
#define DETBENCH_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace detbench {

// Half-open interval of code point indices.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const Span&, const Span&) = default;
};

// Maximal runs of word characters (see unicode::is_word_char).
std::vector<Span> word_tokens(std::u32string_view text);

// Whitespace runs that separate sentences: a run that follows terminal
// punctuation (. ! ? or U+2026, optionally followed by closing quotes or
// brackets) and precedes a non-whitespace character.
std::vector<Span> sentence_breaks(std::u32string_view text);

// Transfers the casing pattern of `source` onto `replacement`: all-caps
// sources (two or more cased letters) yield an upper-cased replacement,
// capitalized sources capitalize the first letter, anything else returns the
// replacement unchanged.
std::u32string apply_casing(std::u32string_view source,
                            std::u32string_view replacement);

// A document cut into sentences plus the exact separators between them, so
// that join() restores the original text byte for byte.
struct SentenceSplit {
  std::string leading;                  // whitespace before the first sentence
  std::vector<std::string> sentences;   // never empty strings
  std::vector<std::string> separators;  // sentences.size() - 1 entries
  std::string trailing;                 // whitespace after the last sentence

  std::string join() const;
  std::string join(const std::vector<std::string>& replacement) const;
};

SentenceSplit split_sentences(std::string_view text);

}  // namespace detbench

#endif  // DETBENCH_TEXT_H_
