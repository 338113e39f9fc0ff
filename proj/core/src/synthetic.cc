#include "detbench/synthetic.h"

#include <array>
#include <string_view>

#include "detbench/unicode.h"

namespace detbench {

namespace {

constexpr std::array<std::string_view, 8> kDeterminers = {
    "the", "a", "the", "this", "our", "the", "every", "a"};
constexpr std::array<std::string_view, 22> kAdjectives = {
    "big",    "small",  "good",    "important", "new",       "old",     "quick",     "happy",
    "simple", "clear",  "strong",  "fresh",     "different", "whole",   "delicious", "gray",
    "skeptical", "favorite", "colorful", "main", "easy", "difficult"};
constexpr std::array<std::string_view, 24> kNouns = {
    "method", "result",  "problem", "idea",   "story",   "book",     "film",   "dish",
    "city",   "world",   "paper",   "model",  "child",   "car",      "house",  "color",
    "center", "neighbor", "behavior", "flavor", "government", "library", "restaurant", "committee"};
constexpr std::array<std::string_view, 14> kVerbs = {
    "shows", "needs",   "gives",  "finds",     "makes",    "improves", "combines",
    "uses",  "changes", "offers", "describes", "analyzes", "organizes", "helps"};
constexpr std::array<std::string_view, 12> kBaseVerbs = {
    "use", "make", "show", "help", "start", "find", "improve", "combine", "cook", "add", "mix", "look"};
constexpr std::array<std::string_view, 10> kAdverbs = {
    "quickly", "slowly", "very", "often", "really", "usually", "carefully", "evenly",
    "definitely", "probably"};
constexpr std::array<std::string_view, 12> kOpeners = {
    "However", "Therefore", "Moreover", "In addition", "For example", "In fact",
    "As a result", "On the other hand", "Overall", "Finally", "Although it is weird", "Because of this"};
constexpr std::array<std::string_view, 8> kClauses = {
    "because people believe it", "which is necessary", "until tomorrow", "with their friend",
    "and we receive it", "since the beginning", "for the whole world", "in the library"};

template <std::size_t N>
std::string_view pick(SeededRng& rng, const std::array<std::string_view, N>& pool) {
  return pool[rng.below(N)];
}

std::string number(SeededRng& rng) {
  switch (rng.below(4)) {
    case 0:
      return std::to_string(1990 + rng.below(35));
    case 1:
      return std::to_string(2 + rng.below(98));
    case 2:
      return "0" + std::to_string(1 + rng.below(9));
    default:
      return std::to_string(100 + rng.below(900));
  }
}

std::string sentence(SeededRng& rng) {
  std::string s;
  if (rng.below(3) == 0) {
    s += pick(rng, kOpeners);
    s += ", ";
  }
  const std::string_view determiner = pick(rng, kDeterminers);
  const std::string_view adjective = pick(rng, kAdjectives);
  s += determiner;
  if (determiner == "a" && std::string_view("aeiou").find(adjective[0]) != std::string_view::npos) s += 'n';
  s += ' ';
  s += adjective;
  s += ' ';
  s += pick(rng, kNouns);
  s += ' ';
  if (rng.below(2) == 0) {
    s += pick(rng, kAdverbs);
    s += ' ';
  }
  switch (rng.below(3)) {
    case 0:
      s += pick(rng, kVerbs);
      s += " the ";
      s += pick(rng, kNouns);
      break;
    case 1:
      s += "wants to ";
      s += pick(rng, kBaseVerbs);
      {
        const std::string_view adj = pick(rng, kAdjectives);
        s += std::string_view("aeiou").find(adj[0]) == std::string_view::npos ? " a " : " an ";
        s += adj;
      }
      s += ' ';
      s += pick(rng, kNouns);
      break;
    default:
      s += pick(rng, kVerbs);
      s += ' ';
      s += number(rng);
      s += ' ';
      s += pick(rng, kNouns);
      s += 's';
      break;
  }
  if (rng.below(3) == 0) {
    s += ' ';
    s += pick(rng, kClauses);
  }
  if (rng.below(4) == 0) {
    s += " in ";
    s += number(rng);
  }
  const std::size_t end = rng.below(10);
  s += end == 0 ? '!' : end == 1 ? '?' : '.';
  if (s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string make_id(std::string_view domain, std::size_t index) {
  return std::string(domain) + "-" + std::to_string(index);
}

}  // namespace

std::string synthetic_text(SeededRng& rng, std::size_t sentences) {
  std::string text;
  for (std::size_t i = 0; i < sentences; ++i) {
    if (i > 0) text += rng.below(5) == 0 ? "\n" : " ";
    text += sentence(rng);
  }
  return text;
}

Corpus make_synthetic_corpus(const SyntheticCorpusOptions& options) {
  SeededRng rng(options.seed);
  std::vector<Document> docs;
  for (Domain domain : options.domains) {
    const std::string_view name = to_string(domain);
    for (std::size_t h = 0; h < options.humans_per_domain; ++h) {
      Document human;
      human.id = make_id(name, h);
      human.text = synthetic_text(rng, options.sentences_per_document);
      human.domain = domain;
      docs.push_back(human);
      for (Model model : options.models) {
        const int generations = generations_per_human_document(model);
        for (int g = 0; g < generations; ++g) {
          Document doc;
          doc.label = Label::kMachine;
          doc.model = model;
          doc.domain = domain;
          doc.decoding = kGenerationDecodings[static_cast<std::size_t>(g)];
          doc.id = human.id + "." + std::string(to_string(model)) + "." +
                   std::string(to_string(doc.decoding));
          doc.text = synthetic_text(rng, options.sentences_per_document);
          doc.source_id = human.id;
          docs.push_back(std::move(doc));
        }
      }
    }
  }
  return Corpus::from_documents(std::move(docs));
}

std::vector<ScoreRecord> separable_scores(const Corpus& corpus, const std::string& detector_id,
                                          std::uint64_t seed) {
  std::vector<ScoreRecord> out;
  out.reserve(corpus.size());
  for (const Document& doc : corpus.documents()) {
    SeededRng rng(mix_seed(seed, fnv1a64(doc.id)));
    const double score = doc.is_machine() ? rng.uniform(0.9, 1.0) : rng.uniform(0.0, 0.1);
    out.push_back({doc.id, detector_id, score});
  }
  return out;
}

}  // namespace detbench
