#include "detbench/attacks.h"

#include <algorithm>
#include <cmath>

#include "detbench/error.h"
#include "detbench/random.h"
#include "detbench/text.h"
#include "detbench/unicode.h"

namespace detbench {

namespace {

std::u32string_view slice(std::u32string_view text, const Span& span) {
  return text.substr(span.begin, span.size());
}

std::vector<MutationSite> word_map_sites(std::u32string_view text, const WordMap& map) {
  std::vector<MutationSite> sites;
  for (const Span& tok : word_tokens(text)) {
    const std::u32string_view word = slice(text, tok);
    if (const std::u32string* to = map.find(unicode::to_lower(word))) {
      sites.push_back({tok.begin, tok.end, apply_casing(word, *to)});
    }
  }
  return sites;
}

std::vector<MutationSite> article_sites(std::u32string_view text) {
  std::vector<MutationSite> sites;
  std::size_t consumed = 0;  // first index not yet claimed by a site
  for (const Span& tok : word_tokens(text)) {
    const std::u32string lower = unicode::to_lower(slice(text, tok));
    if (lower != U"a" && lower != U"an" && lower != U"the") continue;
    MutationSite site{tok.begin, tok.end, {}};
    if (tok.end < text.size() && unicode::is_whitespace(text[tok.end])) {
      site.end = tok.end + 1;
    } else if (tok.begin > consumed && unicode::is_whitespace(text[tok.begin - 1])) {
      site.begin = tok.begin - 1;
    }
    consumed = site.end;
    sites.push_back(std::move(site));
  }
  return sites;
}

std::vector<MutationSite> homoglyph_sites(std::u32string_view text,
                                          const ConfusablesTable& table) {
  std::vector<MutationSite> sites;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (auto glyph = table.confusable(text[i])) sites.push_back({i, i + 1, {*glyph}});
  }
  return sites;
}

std::vector<MutationSite> paragraph_sites(std::u32string_view text) {
  std::vector<MutationSite> sites;
  for (const Span& gap : sentence_breaks(text)) {
    if (slice(text, gap) == U"\n\n") continue;
    sites.push_back({gap.begin, gap.end, U"\n\n"});
  }
  return sites;
}

bool is_ascii_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

// Digit in [lo, 9] different from `original`, uniformly.
char32_t other_digit(SeededRng& rng, char32_t original, char32_t lo) {
  const auto choices = static_cast<std::uint64_t>(U'9' - lo + 1) -
                       (original >= lo ? 1 : 0);
  auto d = static_cast<char32_t>(lo + rng.below(choices));
  if (original >= lo && d >= original) ++d;
  return d;
}

std::vector<MutationSite> number_sites(std::u32string_view text, std::uint64_t seed) {
  std::vector<MutationSite> sites;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_ascii_digit(text[i])) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    while (i < text.size() && is_ascii_digit(text[i])) ++i;
    std::u32string digits(text.substr(begin, i - begin));
    std::size_t first = 0;
    while (first + 1 < digits.size() && digits[first] == U'0') ++first;
    SeededRng rng(mix_seed(seed, sites.size()));
    digits[first] = other_digit(rng, digits[first], U'1');
    for (std::size_t k = first + 1; k < digits.size(); ++k) {
      digits[k] = other_digit(rng, digits[k], U'0');
    }
    sites.push_back({begin, i, std::move(digits)});
  }
  return sites;
}

std::vector<MutationSite> synonym_sites(std::u32string_view text, const ResourceSet& resources,
                                        std::uint64_t seed) {
  const SynonymLexicon& lexicon = resources.synonyms();
  const PosTagger& tagger = resources.pos_tagger();
  std::vector<MutationSite> sites;
  for (const Span& tok : word_tokens(text)) {
    const std::u32string_view word = slice(text, tok);
    const std::u32string lower = unicode::to_lower(word);
    const auto* synonyms = lexicon.find(lower, tagger.tag(lower));
    if (synonyms == nullptr) continue;
    SeededRng rng(mix_seed(seed, sites.size()));
    const std::u32string& choice = (*synonyms)[rng.below(synonyms->size())];
    sites.push_back({tok.begin, tok.end, apply_casing(word, choice)});
  }
  return sites;
}

std::vector<MutationSite> case_sites(std::u32string_view text) {
  std::vector<MutationSite> sites;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (unicode::is_cased(text[i])) sites.push_back({i, i + 1, {unicode::flip_case(text[i])}});
  }
  return sites;
}

std::vector<MutationSite> whitespace_sites(std::u32string_view text) {
  std::vector<MutationSite> sites;
  const std::vector<Span> tokens = word_tokens(text);
  for (std::size_t k = 0; k + 1 < tokens.size(); ++k) {
    for (std::size_t i = tokens[k].end; i < tokens[k + 1].begin; ++i) {
      if (unicode::is_whitespace(text[i])) {
        sites.push_back({i, i, U" "});
        break;
      }
    }
  }
  return sites;
}

std::vector<MutationSite> zero_width_sites(std::u32string_view text) {
  std::vector<MutationSite> sites;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (!unicode::is_whitespace(text[i - 1]) && !unicode::is_whitespace(text[i])) {
      sites.push_back({i, i, {unicode::kZeroWidthSpace}});
    }
  }
  return sites;
}

bool has_content(std::u32string_view text) {
  return std::any_of(text.begin(), text.end(),
                     [](char32_t cp) { return !unicode::is_whitespace(cp); });
}

}  // namespace

AttackSpec AttackSpec::with_default_theta(AttackKind kind, std::uint64_t seed) {
  return AttackSpec{kind, default_theta(kind), seed};
}

void AttackSpec::validate() const {
  if (kind == AttackKind::kNone) throw ConfigError("attack kind 'none' cannot be applied");
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw ConfigError("theta for " + std::string(to_string(kind)) + " must lie in [0, 1]");
  }
}

std::shared_ptr<ParaphraseProvider> AttackContext::paraphrase_provider() const {
  if (paraphraser) return paraphraser;
  return std::make_shared<BuiltinParaphraser>(resources);
}

std::vector<MutationSite> enumerate_sites(AttackKind kind, std::u32string_view text,
                                          const AttackContext& context,
                                          std::uint64_t mutation_seed) {
  switch (kind) {
    case AttackKind::kNone:
      return {};
    case AttackKind::kAlternativeSpelling:
      return word_map_sites(text, context.resources.alternative_spelling());
    case AttackKind::kArticleDeletion:
      return article_sites(text);
    case AttackKind::kHomoglyph:
      return homoglyph_sites(text, context.resources.confusables());
    case AttackKind::kInsertParagraphs:
      return paragraph_sites(text);
    case AttackKind::kNumberSwap:
      return number_sites(text, mutation_seed);
    case AttackKind::kParaphrase: {
      if (!has_content(text)) return {};
      const std::string rewritten =
          context.paraphrase_provider()->paraphrase(unicode::encode_utf8(text));
      return {MutationSite{0, text.size(), unicode::decode_utf8(rewritten)}};
    }
    case AttackKind::kMisspelling:
      return word_map_sites(text, context.resources.misspelling());
    case AttackKind::kSynonym:
      return synonym_sites(text, context.resources, mutation_seed);
    case AttackKind::kUpperLowerSwap:
      return case_sites(text);
    case AttackKind::kWhitespace:
      return whitespace_sites(text);
    case AttackKind::kZeroWidthSpace:
      return zero_width_sites(text);
  }
  return {};
}

std::size_t budget(double theta, std::size_t total_sites) {
  if (total_sites == 0 || !(theta > 0.0)) return 0;
  const double scaled = std::floor(theta * static_cast<double>(total_sites) + 0.5 + 1e-9);
  const auto n = scaled >= static_cast<double>(total_sites) ? total_sites
                                                             : static_cast<std::size_t>(scaled);
  return std::max<std::size_t>(n, 1);
}

std::vector<std::size_t> select_sites(std::size_t total_sites, double theta, std::uint64_t seed,
                                      std::uint64_t text_digest) {
  const std::size_t count = budget(theta, total_sites);
  if (count == 0) return {};
  std::vector<std::size_t> order = seeded_permutation(total_sites, mix_seed(seed, text_digest));
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

std::u32string splice_sites(std::u32string_view text, std::span<const MutationSite> sites) {
  std::u32string out(text);
  for (auto it = sites.rbegin(); it != sites.rend(); ++it) {
    if (it->begin > it->end || it->end > out.size()) {
      throw Error("mutation site outside the text");
    }
    out.replace(it->begin, it->end - it->begin, it->replacement);
  }
  return out;
}

AttackResult apply_attack(const AttackSpec& spec, std::string_view text,
                          const AttackContext& context) {
  spec.validate();
  const std::u32string decoded = unicode::decode_utf8(text);
  const std::uint64_t digest = fnv1a64(text);
  AttackResult result;
  result.spec = spec;

  if (spec.kind == AttackKind::kParaphrase) {
    result.total_sites = has_content(decoded) ? 1 : 0;
    result.chosen_indices = select_sites(result.total_sites, spec.theta, spec.seed, digest);
    result.mutated_sites = result.chosen_indices.size();
    result.text = result.mutated_sites == 0 ? std::string(text)
                                            : context.paraphrase_provider()->paraphrase(text);
    return result;
  }

  const std::vector<MutationSite> sites = enumerate_sites(spec.kind, decoded, context, spec.seed);
  result.total_sites = sites.size();
  result.chosen_indices = select_sites(sites.size(), spec.theta, spec.seed, digest);
  result.mutated_sites = result.chosen_indices.size();
  std::vector<MutationSite> chosen;
  chosen.reserve(result.chosen_indices.size());
  for (std::size_t i : result.chosen_indices) chosen.push_back(sites[i]);
  result.text = unicode::encode_utf8(splice_sites(decoded, chosen));
  return result;
}

}  // namespace detbench
