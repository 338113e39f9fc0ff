#ifndef DETBENCH_TAXONOMY_H_
#define DETBENCH_TAXONOMY_H_

// Closed vocabularies of the benchmark corpus: generators, domains,
// decoding strategies and adversarial attacks. Each enum has a fixed
// lowercase snake_case spelling used in every file format.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace detbench {

enum class Label : std::uint8_t { kHuman, kMachine };

enum class Model : std::uint8_t {
  kHuman,
  kGpt2,
  kGpt3,
  kGpt4,
  kChatGpt,
  kCohere,
  kCohereChat,
  kMistral,
  kMistralChat,
  kMpt,
  kMptChat,
  kLlamaChat,
};

enum class Domain : std::uint8_t {
  kAbstracts,
  kRecipes,
  kBooks,
  kReddit,
  kNews,
  kReviews,
  kPoetry,
  kWiki,
};

enum class Decoding : std::uint8_t {
  kGreedy,
  kSampling,
  kGreedyRepPenalty,
  kSamplingRepPenalty,
  kNone,
};

// kNone marks an unattacked document; the other eleven are attack kinds.
enum class AttackKind : std::uint8_t {
  kNone,
  kAlternativeSpelling,
  kArticleDeletion,
  kHomoglyph,
  kInsertParagraphs,
  kNumberSwap,
  kParaphrase,
  kMisspelling,
  kSynonym,
  kUpperLowerSwap,
  kWhitespace,
  kZeroWidthSpace,
};

inline constexpr std::array<Label, 2> kAllLabels = {Label::kHuman,
                                                    Label::kMachine};

// The eleven generators, in leaderboard order.
inline constexpr std::array<Model, 11> kGeneratorModels = {
    Model::kGpt2,   Model::kGpt3,        Model::kGpt4,       Model::kChatGpt,
    Model::kCohere, Model::kCohereChat,  Model::kMistral,    Model::kMistralChat,
    Model::kMpt,    Model::kMptChat,     Model::kLlamaChat,
};

inline constexpr std::array<Domain, 8> kAllDomains = {
    Domain::kAbstracts, Domain::kRecipes, Domain::kBooks,  Domain::kReddit,
    Domain::kNews,      Domain::kReviews, Domain::kPoetry, Domain::kWiki,
};

inline constexpr std::array<Decoding, 4> kGenerationDecodings = {
    Decoding::kGreedy, Decoding::kSampling, Decoding::kGreedyRepPenalty,
    Decoding::kSamplingRepPenalty};

// The eleven attacks (kNone excluded).
inline constexpr std::array<AttackKind, 11> kAllAttackKinds = {
    AttackKind::kAlternativeSpelling, AttackKind::kArticleDeletion,
    AttackKind::kHomoglyph,           AttackKind::kInsertParagraphs,
    AttackKind::kNumberSwap,          AttackKind::kParaphrase,
    AttackKind::kMisspelling,         AttackKind::kSynonym,
    AttackKind::kUpperLowerSwap,      AttackKind::kWhitespace,
    AttackKind::kZeroWidthSpace,
};

std::string_view to_string(Label label);
std::string_view to_string(Model model);
std::string_view to_string(Domain domain);
std::string_view to_string(Decoding decoding);
std::string_view to_string(AttackKind attack);

std::optional<Label> parse_label(std::string_view text);
std::optional<Model> parse_model(std::string_view text);
std::optional<Domain> parse_domain(std::string_view text);
std::optional<Decoding> parse_decoding(std::string_view text);
std::optional<AttackKind> parse_attack(std::string_view text);

// Human-readable display names for reports.
std::string_view display_name(Model model);
std::string_view display_name(Domain domain);
std::string_view display_name(Decoding decoding);
std::string_view display_name(AttackKind attack);

// API-served generators lack repetition-penalty decoding and contribute two
// generations per human document; open-weight generators contribute four.
bool is_api_model(Model model);
int generations_per_human_document(Model model);

// Fraction of the attack surface mutated by default (0 for kNone).
double default_theta(AttackKind attack);

}  // namespace detbench

#endif  // DETBENCH_TAXONOMY_H_
