#include "detbench/taxonomy.h"

#include <utility>

namespace detbench {
namespace {

template <class Enum, std::size_t N>
using NameTable = std::array<std::pair<Enum, std::string_view>, N>;

constexpr NameTable<Label, 2> kLabelNames{{
    {Label::kHuman, "human"},
    {Label::kMachine, "machine"},
}};

constexpr NameTable<Model, 12> kModelNames{{
    {Model::kHuman, "human"},
    {Model::kGpt2, "gpt2"},
    {Model::kGpt3, "gpt3"},
    {Model::kGpt4, "gpt4"},
    {Model::kChatGpt, "chatgpt"},
    {Model::kCohere, "cohere"},
    {Model::kCohereChat, "cohere_chat"},
    {Model::kMistral, "mistral"},
    {Model::kMistralChat, "mistral_chat"},
    {Model::kMpt, "mpt"},
    {Model::kMptChat, "mpt_chat"},
    {Model::kLlamaChat, "llama_chat"},
}};

constexpr NameTable<Model, 12> kModelDisplay{{
    {Model::kHuman, "Human"},
    {Model::kGpt2, "GPT-2"},
    {Model::kGpt3, "GPT-3 (davinci-003)"},
    {Model::kGpt4, "GPT-4"},
    {Model::kChatGpt, "ChatGPT"},
    {Model::kCohere, "Cohere"},
    {Model::kCohereChat, "Cohere Chat"},
    {Model::kMistral, "Mistral 7B"},
    {Model::kMistralChat, "Mistral 7B Chat"},
    {Model::kMpt, "MPT 30B"},
    {Model::kMptChat, "MPT 30B Chat"},
    {Model::kLlamaChat, "Llama 2 70B Chat"},
}};

constexpr NameTable<Domain, 8> kDomainNames{{
    {Domain::kAbstracts, "abstracts"},
    {Domain::kRecipes, "recipes"},
    {Domain::kBooks, "books"},
    {Domain::kReddit, "reddit"},
    {Domain::kNews, "news"},
    {Domain::kReviews, "reviews"},
    {Domain::kPoetry, "poetry"},
    {Domain::kWiki, "wiki"},
}};

constexpr NameTable<Domain, 8> kDomainDisplay{{
    {Domain::kAbstracts, "Abstracts"},
    {Domain::kRecipes, "Recipes"},
    {Domain::kBooks, "Books"},
    {Domain::kReddit, "Reddit"},
    {Domain::kNews, "News"},
    {Domain::kReviews, "Reviews"},
    {Domain::kPoetry, "Poetry"},
    {Domain::kWiki, "Wiki"},
}};

constexpr NameTable<Decoding, 5> kDecodingNames{{
    {Decoding::kGreedy, "greedy"},
    {Decoding::kSampling, "sampling"},
    {Decoding::kGreedyRepPenalty, "greedy_rep_penalty"},
    {Decoding::kSamplingRepPenalty, "sampling_rep_penalty"},
    {Decoding::kNone, "none"},
}};

constexpr NameTable<Decoding, 5> kDecodingDisplay{{
    {Decoding::kGreedy, "Greedy (temp=0)"},
    {Decoding::kSampling, "Random Sampling (temp=1, top-p=1)"},
    {Decoding::kGreedyRepPenalty, "Greedy + Repetition Penalty"},
    {Decoding::kSamplingRepPenalty, "Sampling + Repetition Penalty"},
    {Decoding::kNone, "None"},
}};

constexpr NameTable<AttackKind, 12> kAttackNames{{
    {AttackKind::kNone, "none"},
    {AttackKind::kAlternativeSpelling, "alternative_spelling"},
    {AttackKind::kArticleDeletion, "article_deletion"},
    {AttackKind::kHomoglyph, "homoglyph"},
    {AttackKind::kInsertParagraphs, "insert_paragraphs"},
    {AttackKind::kNumberSwap, "number_swap"},
    {AttackKind::kParaphrase, "paraphrase"},
    {AttackKind::kMisspelling, "misspelling"},
    {AttackKind::kSynonym, "synonym"},
    {AttackKind::kUpperLowerSwap, "upper_lower_swap"},
    {AttackKind::kWhitespace, "whitespace"},
    {AttackKind::kZeroWidthSpace, "zero_width_space"},
}};

constexpr NameTable<AttackKind, 12> kAttackDisplay{{
    {AttackKind::kNone, "None"},
    {AttackKind::kAlternativeSpelling, "Alternative Spelling"},
    {AttackKind::kArticleDeletion, "Article Deletion"},
    {AttackKind::kHomoglyph, "Homoglyph"},
    {AttackKind::kInsertParagraphs, "Insert Paragraphs"},
    {AttackKind::kNumberSwap, "Number Swap"},
    {AttackKind::kParaphrase, "Paraphrase"},
    {AttackKind::kMisspelling, "Misspelling"},
    {AttackKind::kSynonym, "Synonym Swap"},
    {AttackKind::kUpperLowerSwap, "Upper Lower Swap"},
    {AttackKind::kWhitespace, "Whitespace Addition"},
    {AttackKind::kZeroWidthSpace, "Zero Width Space"},
}};

template <class Enum, std::size_t N>
std::string_view lookup(const NameTable<Enum, N>& table, Enum value) {
  for (const auto& [key, name] : table) {
    if (key == value) return name;
  }
  return "?";
}

template <class Enum, std::size_t N>
std::optional<Enum> reverse_lookup(const NameTable<Enum, N>& table,
                                   std::string_view text) {
  for (const auto& [key, name] : table) {
    if (name == text) return key;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Label v) { return lookup(kLabelNames, v); }
std::string_view to_string(Model v) { return lookup(kModelNames, v); }
std::string_view to_string(Domain v) { return lookup(kDomainNames, v); }
std::string_view to_string(Decoding v) { return lookup(kDecodingNames, v); }
std::string_view to_string(AttackKind v) { return lookup(kAttackNames, v); }

std::optional<Label> parse_label(std::string_view t) { return reverse_lookup(kLabelNames, t); }
std::optional<Model> parse_model(std::string_view t) { return reverse_lookup(kModelNames, t); }
std::optional<Domain> parse_domain(std::string_view t) { return reverse_lookup(kDomainNames, t); }
std::optional<Decoding> parse_decoding(std::string_view t) {
  return reverse_lookup(kDecodingNames, t);
}
std::optional<AttackKind> parse_attack(std::string_view t) {
  return reverse_lookup(kAttackNames, t);
}

std::string_view display_name(Model v) { return lookup(kModelDisplay, v); }
std::string_view display_name(Domain v) { return lookup(kDomainDisplay, v); }
std::string_view display_name(Decoding v) { return lookup(kDecodingDisplay, v); }
std::string_view display_name(AttackKind v) { return lookup(kAttackDisplay, v); }

bool is_api_model(Model model) {
  switch (model) {
    case Model::kGpt3:
    case Model::kGpt4:
    case Model::kChatGpt:
    case Model::kCohere:
    case Model::kCohereChat:
      return true;
    default:
      return false;
  }
}

int generations_per_human_document(Model model) {
  if (model == Model::kHuman) return 0;
  return is_api_model(model) ? 2 : 4;
}

double default_theta(AttackKind attack) {
  switch (attack) {
    case AttackKind::kNone:
      return 0.0;
    case AttackKind::kAlternativeSpelling:
      return 1.00;
    case AttackKind::kArticleDeletion:
      return 0.50;
    case AttackKind::kHomoglyph:
      return 1.00;
    case AttackKind::kInsertParagraphs:
      return 0.50;
    case AttackKind::kNumberSwap:
      return 0.50;
    case AttackKind::kParaphrase:
      return 1.00;
    case AttackKind::kMisspelling:
      return 0.20;
    case AttackKind::kSynonym:
      return 0.50;
    case AttackKind::kUpperLowerSwap:
      return 0.05;
    case AttackKind::kWhitespace:
      return 0.20;
    case AttackKind::kZeroWidthSpace:
      return 1.00;
  }
  return 0.0;
}

}  // namespace detbench
