#ifndef DETBENCH_RESOURCES_H_
#define DETBENCH_RESOURCES_H_

// Dictionaries used by the attacks. All files are UTF-8, tab separated, with
// '#' comment lines:
//
//   confusables.tsv      latin-char<TAB>confusable-char (one-to-one)
//   us_uk_spelling.tsv   us-word<TAB>uk-word
//   misspellings.tsv     correct-word<TAB>misspelled-word
//   synonyms.tsv         headword<TAB>POS<TAB>syn1,syn2,...
//   pos_tagger.tsv       word<TAB>POS  or  -suffix<TAB>POS
//   connectives.tsv      phrase<TAB>replacement
//
// POS is one of NOUN, VERB, ADJ, ADV.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace detbench {

class ConfusablesTable {
 public:
  static ConfusablesTable parse(std::string_view content,
                                std::string_view source_name);

  // Confusable glyph for a canonical character, if any.
  std::optional<char32_t> confusable(char32_t canonical) const;
  // Canonical character for a confusable glyph, if any.
  std::optional<char32_t> canonical(char32_t glyph) const;
  std::size_t size() const { return forward_.size(); }
  const std::map<char32_t, char32_t>& entries() const { return forward_; }

 private:
  std::map<char32_t, char32_t> forward_;
  std::map<char32_t, char32_t> reverse_;
};

// Lowercase word -> replacement word.
class WordMap {
 public:
  static WordMap parse(std::string_view content, std::string_view source_name);

  const std::u32string* find(std::u32string_view lowercase_word) const;
  std::size_t size() const { return map_.size(); }

 private:
  std::map<std::u32string, std::u32string, std::less<>> map_;
};

enum class PartOfSpeech : std::uint8_t { kNoun, kVerb, kAdjective, kAdverb };

std::optional<PartOfSpeech> parse_pos(std::string_view tag);
std::string_view to_string(PartOfSpeech pos);

class SynonymLexicon {
 public:
  static SynonymLexicon parse(std::string_view content,
                              std::string_view source_name);

  const std::vector<std::u32string>* find(std::u32string_view lowercase_word,
                                          PartOfSpeech pos) const;
  // Synonyms of the first listed sense of `lowercase_word`, any POS.
  const std::vector<std::u32string>* first_sense(
      std::u32string_view lowercase_word) const;
  bool contains(std::u32string_view lowercase_word) const;
  std::size_t size() const { return first_.size(); }

 private:
  std::map<std::pair<std::u32string, PartOfSpeech>, std::vector<std::u32string>>
      senses_;
  std::map<std::u32string, std::pair<std::u32string, PartOfSpeech>, std::less<>>
      first_;
};

// Unigram tagger: exact word entries, then the longest matching suffix rule,
// then NOUN.
class PosTagger {
 public:
  static PosTagger parse(std::string_view content, std::string_view source_name);

  PartOfSpeech tag(std::u32string_view lowercase_word) const;

 private:
  std::map<std::u32string, PartOfSpeech, std::less<>> words_;
  std::vector<std::pair<std::u32string, PartOfSpeech>> suffixes_;  // longest first
};

// Multi-word phrase rewrites (lowercase token sequences).
class PhraseMap {
 public:
  struct Entry {
    std::vector<std::u32string> tokens;
    std::u32string replacement;
  };

  static PhraseMap parse(std::string_view content, std::string_view source_name);

  // Entries ordered longest phrase first.
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

enum class ResourceKind : std::uint8_t {
  kConfusables,
  kAlternativeSpelling,
  kMisspelling,
  kSynonyms,
  kPosTagger,
  kConnectives,
};

std::string_view resource_file_name(ResourceKind kind);

// Lazily loaded dictionaries. Each dictionary is read on first access and
// cached; copies share the cache. Thread-safe.
class ResourceSet {
 public:
  // Shipped dictionaries compiled into the library.
  static ResourceSet builtin();
  // Files named by resource_file_name() inside `directory`. Missing files
  // raise ResourceError on first access, not here.
  static ResourceSet from_directory(const std::filesystem::path& directory);

  const ConfusablesTable& confusables() const;
  const WordMap& alternative_spelling() const;
  const WordMap& misspelling() const;
  const SynonymLexicon& synonyms() const;
  const PosTagger& pos_tagger() const;
  const PhraseMap& connectives() const;

  bool loaded(ResourceKind kind) const;
  std::string description() const;

 private:
  struct State;
  explicit ResourceSet(std::shared_ptr<State> state);
  std::shared_ptr<State> state_;
};

// Raw content of a shipped dictionary, by file name. Empty if unknown.
std::string_view builtin_resource(std::string_view file_name);

}  // namespace detbench

#endif  // DETBENCH_RESOURCES_H_
