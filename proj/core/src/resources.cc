#include "detbench/resources.h"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

#include "detbench/error.h"
#include "detbench/text.h"
#include "detbench/tsv.h"
#include "detbench/unicode.h"

namespace detbench {

namespace embedded {
std::string_view find_resource(std::string_view name);
}  // namespace embedded

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> fields;
};

std::vector<Line> data_lines(std::string_view content, std::string_view source,
                             std::size_t min_fields, std::size_t max_fields) {
  std::istringstream in{std::string(content)};
  tsv::Reader reader(in);
  std::vector<Line> lines;
  while (auto row = reader.next()) {
    if (row->fields.size() < min_fields || row->fields.size() > max_fields) {
      throw ResourceError(std::string(source) + ": line " + std::to_string(row->line) +
                          " has " + std::to_string(row->fields.size()) + " fields");
    }
    lines.push_back({row->line, std::move(row->fields)});
  }
  return lines;
}

std::u32string decode_field(std::string_view field, std::string_view source,
                            std::size_t line) {
  if (!unicode::is_valid_utf8(field)) {
    throw ResourceError(std::string(source) + ": invalid UTF-8 on line " +
                        std::to_string(line));
  }
  return unicode::decode_utf8(field);
}

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line) + ": ";
}

}  // namespace

ConfusablesTable ConfusablesTable::parse(std::string_view content,
                                         std::string_view source_name) {
  ConfusablesTable table;
  for (const Line& line : data_lines(content, source_name, 2, 2)) {
    const std::u32string from = decode_field(line.fields[0], source_name, line.number);
    const std::u32string to = decode_field(line.fields[1], source_name, line.number);
    if (from.size() != 1 || to.size() != 1 || from == to) {
      throw ResourceError(where(source_name, line.number) +
                          "entries must be two distinct single characters");
    }
    if (!table.forward_.emplace(from[0], to[0]).second ||
        !table.reverse_.emplace(to[0], from[0]).second) {
      throw ResourceError(where(source_name, line.number) +
                          "mapping must be one-to-one");
    }
  }
  for (const auto& [canonical, glyph] : table.forward_) {
    if (table.forward_.contains(glyph) || table.reverse_.contains(canonical)) {
      throw ResourceError(std::string(source_name) +
                          ": a character is both canonical and a glyph");
    }
  }
  return table;
}

std::optional<char32_t> ConfusablesTable::confusable(char32_t canonical) const {
  auto it = forward_.find(canonical);
  if (it == forward_.end()) return std::nullopt;
  return it->second;
}

std::optional<char32_t> ConfusablesTable::canonical(char32_t glyph) const {
  auto it = reverse_.find(glyph);
  if (it == reverse_.end()) return std::nullopt;
  return it->second;
}

WordMap WordMap::parse(std::string_view content, std::string_view source_name) {
  WordMap map;
  for (const Line& line : data_lines(content, source_name, 2, 2)) {
    std::u32string key = decode_field(line.fields[0], source_name, line.number);
    std::u32string value = decode_field(line.fields[1], source_name, line.number);
    if (key.empty() || value.empty() || unicode::to_lower(key) != key) {
      throw ResourceError(where(source_name, line.number) +
                          "keys must be non-empty lowercase words");
    }
    if (unicode::to_lower(value) == key) {
      throw ResourceError(where(source_name, line.number) +
                          "replacement must differ from the key");
    }
    if (!map.map_.emplace(std::move(key), std::move(value)).second) {
      throw ResourceError(where(source_name, line.number) + "duplicate key");
    }
  }
  return map;
}

const std::u32string* WordMap::find(std::u32string_view lowercase_word) const {
  auto it = map_.find(lowercase_word);
  return it == map_.end() ? nullptr : &it->second;
}

std::optional<PartOfSpeech> parse_pos(std::string_view tag) {
  if (tag == "NOUN") return PartOfSpeech::kNoun;
  if (tag == "VERB") return PartOfSpeech::kVerb;
  if (tag == "ADJ") return PartOfSpeech::kAdjective;
  if (tag == "ADV") return PartOfSpeech::kAdverb;
  return std::nullopt;
}

std::string_view to_string(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::kNoun:
      return "NOUN";
    case PartOfSpeech::kVerb:
      return "VERB";
    case PartOfSpeech::kAdjective:
      return "ADJ";
    case PartOfSpeech::kAdverb:
      return "ADV";
  }
  return "?";
}

SynonymLexicon SynonymLexicon::parse(std::string_view content,
                                     std::string_view source_name) {
  SynonymLexicon lexicon;
  for (const Line& line : data_lines(content, source_name, 3, 3)) {
    std::u32string head = decode_field(line.fields[0], source_name, line.number);
    auto pos = parse_pos(line.fields[1]);
    if (head.empty() || unicode::to_lower(head) != head || !pos) {
      throw ResourceError(where(source_name, line.number) +
                          "expected lowercase headword and NOUN/VERB/ADJ/ADV");
    }
    std::vector<std::u32string> synonyms;
    std::string_view list = line.fields[2];
    while (!list.empty()) {
      const std::size_t comma = list.find(',');
      std::string_view item = list.substr(0, comma);
      std::u32string syn = decode_field(item, source_name, line.number);
      if (syn.empty() || unicode::to_lower(syn) == head) {
        throw ResourceError(where(source_name, line.number) +
                            "synonyms must be non-empty and differ from the headword");
      }
      synonyms.push_back(std::move(syn));
      if (comma == std::string_view::npos) break;
      list.remove_prefix(comma + 1);
    }
    if (synonyms.empty()) {
      throw ResourceError(where(source_name, line.number) + "empty synonym list");
    }
    if (!lexicon.senses_.emplace(std::pair(head, *pos), std::move(synonyms)).second) {
      throw ResourceError(where(source_name, line.number) + "duplicate headword/POS");
    }
    lexicon.first_.emplace(head, std::pair(head, *pos));
  }
  return lexicon;
}

const std::vector<std::u32string>* SynonymLexicon::find(
    std::u32string_view lowercase_word, PartOfSpeech pos) const {
  auto it = senses_.find(std::pair(std::u32string(lowercase_word), pos));
  return it == senses_.end() ? nullptr : &it->second;
}

const std::vector<std::u32string>* SynonymLexicon::first_sense(
    std::u32string_view lowercase_word) const {
  auto it = first_.find(lowercase_word);
  if (it == first_.end()) return nullptr;
  return &senses_.at(it->second);
}

bool SynonymLexicon::contains(std::u32string_view lowercase_word) const {
  return first_.find(lowercase_word) != first_.end();
}

PosTagger PosTagger::parse(std::string_view content, std::string_view source_name) {
  PosTagger tagger;
  for (const Line& line : data_lines(content, source_name, 2, 2)) {
    std::u32string word = decode_field(line.fields[0], source_name, line.number);
    auto pos = parse_pos(line.fields[1]);
    if (word.empty() || !pos) {
      throw ResourceError(where(source_name, line.number) + "expected word and tag");
    }
    if (word.front() == U'-') {
      if (word.size() < 2) {
        throw ResourceError(where(source_name, line.number) + "empty suffix");
      }
      tagger.suffixes_.emplace_back(word.substr(1), *pos);
    } else if (!tagger.words_.emplace(std::move(word), *pos).second) {
      throw ResourceError(where(source_name, line.number) + "duplicate word");
    }
  }
  std::stable_sort(tagger.suffixes_.begin(), tagger.suffixes_.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  return tagger;
}

PartOfSpeech PosTagger::tag(std::u32string_view lowercase_word) const {
  if (auto it = words_.find(lowercase_word); it != words_.end()) return it->second;
  for (const auto& [suffix, pos] : suffixes_) {
    if (lowercase_word.size() > suffix.size() && lowercase_word.ends_with(suffix)) {
      return pos;
    }
  }
  return PartOfSpeech::kNoun;
}

PhraseMap PhraseMap::parse(std::string_view content, std::string_view source_name) {
  PhraseMap map;
  for (const Line& line : data_lines(content, source_name, 2, 2)) {
    const std::u32string phrase = decode_field(line.fields[0], source_name, line.number);
    Entry entry;
    for (const Span& tok : word_tokens(phrase)) {
      entry.tokens.emplace_back(phrase.substr(tok.begin, tok.size()));
    }
    entry.replacement = decode_field(line.fields[1], source_name, line.number);
    if (entry.tokens.empty() || entry.replacement.empty() ||
        unicode::to_lower(phrase) != phrase ||
        unicode::to_lower(entry.replacement) == phrase) {
      throw ResourceError(where(source_name, line.number) +
                          "expected a lowercase phrase and a different replacement");
    }
    map.entries_.push_back(std::move(entry));
  }
  std::stable_sort(map.entries_.begin(), map.entries_.end(),
                   [](const Entry& a, const Entry& b) { return a.tokens.size() > b.tokens.size(); });
  return map;
}

std::string_view resource_file_name(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::kConfusables:
      return "confusables.tsv";
    case ResourceKind::kAlternativeSpelling:
      return "us_uk_spelling.tsv";
    case ResourceKind::kMisspelling:
      return "misspellings.tsv";
    case ResourceKind::kSynonyms:
      return "synonyms.tsv";
    case ResourceKind::kPosTagger:
      return "pos_tagger.tsv";
    case ResourceKind::kConnectives:
      return "connectives.tsv";
  }
  return "";
}

std::string_view builtin_resource(std::string_view file_name) {
  return embedded::find_resource(file_name);
}

struct ResourceSet::State {
  std::optional<std::filesystem::path> directory;  // nullopt: built-in

  std::mutex mutex;
  std::optional<ConfusablesTable> confusables;
  std::optional<WordMap> alternative_spelling;
  std::optional<WordMap> misspelling;
  std::optional<SynonymLexicon> synonyms;
  std::optional<PosTagger> pos_tagger;
  std::optional<PhraseMap> connectives;

  std::pair<std::string, std::string> read(ResourceKind kind) const {
    const std::string name(resource_file_name(kind));
    if (!directory) return {std::string(builtin_resource(name)), "builtin:" + name};
    const std::filesystem::path path = *directory / name;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ResourceError("cannot open resource dictionary " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return {buf.str(), path.string()};
  }

  template <class T>
  const T& get(std::optional<T>& slot, ResourceKind kind) {
    std::lock_guard<std::mutex> lock(mutex);
    if (!slot) {
      auto [content, source] = read(kind);
      slot.emplace(T::parse(content, source));
    }
    return *slot;
  }
};

ResourceSet::ResourceSet(std::shared_ptr<State> state) : state_(std::move(state)) {}

ResourceSet ResourceSet::builtin() {
  static const std::shared_ptr<State> shared = std::make_shared<State>();
  return ResourceSet(shared);
}

ResourceSet ResourceSet::from_directory(const std::filesystem::path& directory) {
  auto state = std::make_shared<State>();
  state->directory = directory;
  return ResourceSet(std::move(state));
}

const ConfusablesTable& ResourceSet::confusables() const {
  return state_->get(state_->confusables, ResourceKind::kConfusables);
}
const WordMap& ResourceSet::alternative_spelling() const {
  return state_->get(state_->alternative_spelling, ResourceKind::kAlternativeSpelling);
}
const WordMap& ResourceSet::misspelling() const {
  return state_->get(state_->misspelling, ResourceKind::kMisspelling);
}
const SynonymLexicon& ResourceSet::synonyms() const {
  return state_->get(state_->synonyms, ResourceKind::kSynonyms);
}
const PosTagger& ResourceSet::pos_tagger() const {
  return state_->get(state_->pos_tagger, ResourceKind::kPosTagger);
}
const PhraseMap& ResourceSet::connectives() const {
  return state_->get(state_->connectives, ResourceKind::kConnectives);
}

bool ResourceSet::loaded(ResourceKind kind) const {
  std::lock_guard<std::mutex> lock(state_->mutex);
  switch (kind) {
    case ResourceKind::kConfusables:
      return state_->confusables.has_value();
    case ResourceKind::kAlternativeSpelling:
      return state_->alternative_spelling.has_value();
    case ResourceKind::kMisspelling:
      return state_->misspelling.has_value();
    case ResourceKind::kSynonyms:
      return state_->synonyms.has_value();
    case ResourceKind::kPosTagger:
      return state_->pos_tagger.has_value();
    case ResourceKind::kConnectives:
      return state_->connectives.has_value();
  }
  return false;
}

std::string ResourceSet::description() const {
  return state_->directory ? state_->directory->string() : std::string("builtin");
}

}  // namespace detbench
