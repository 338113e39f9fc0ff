#ifndef DETBENCH_ATTACKS_H_
#define DETBENCH_ATTACKS_H_

// Seeded, budgeted adversarial text mutations.
//
// Each attack enumerates its attack surface as a sorted list of
// non-overlapping mutation sites, mutates budget(theta, |sites|) of them
// chosen by a seeded permutation, and splices the replacements right to
// left. Site definitions per attack:
//
//   alternative_spelling  word tokens in the US->UK map; casing preserved
//   article_deletion      standalone a/an/the (any case); the token and one
//                         adjacent space (trailing preferred) are deleted
//   homoglyph             characters with a confusables entry
//   insert_paragraphs     whitespace runs between sentences (except runs that
//                         already equal "\n\n"); replaced by "\n\n"
//   number_swap           maximal ASCII digit runs; every digit after the
//                         run's leading zeros changes to a different seeded
//                         digit and the first changed digit is never 0
//   paraphrase            one whole-document site routed to the provider
//   misspelling           word tokens in the misspelling map; casing kept
//   synonym               word tokens whose tagged part of speech has a
//                         lexicon entry; seeded choice among its synonyms
//   upper_lower_swap      cased letters; case flipped
//   whitespace            gaps between consecutive word tokens that contain
//                         whitespace; one space inserted before the gap's
//                         first whitespace character
//   zero_width_space      boundaries between two non-whitespace characters;
//                         U+200B inserted

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "detbench/paraphrase.h"
#include "detbench/resources.h"
#include "detbench/taxonomy.h"

namespace detbench {

struct AttackSpec {
  AttackKind kind = AttackKind::kZeroWidthSpace;
  double theta = 1.0;
  std::uint64_t seed = 0;

  static AttackSpec with_default_theta(AttackKind kind, std::uint64_t seed);
  // Throws ConfigError unless kind != none and theta is in [0, 1].
  void validate() const;
};

struct MutationSite {
  std::size_t begin = 0;  // code point index
  std::size_t end = 0;    // begin == end for insertions
  std::u32string replacement;

  friend bool operator==(const MutationSite&, const MutationSite&) = default;
};

struct AttackResult {
  std::string text;
  std::size_t total_sites = 0;
  std::size_t mutated_sites = 0;
  std::vector<std::size_t> chosen_indices;
  AttackSpec spec;
};

// Everything an attack may need besides the text. The paraphraser defaults
// to a BuiltinParaphraser over `resources`.
struct AttackContext {
  ResourceSet resources = ResourceSet::builtin();
  std::shared_ptr<ParaphraseProvider> paraphraser;

  std::shared_ptr<ParaphraseProvider> paraphrase_provider() const;
};

// Every eligible site of `kind` in `text`. Replacements of seeded attacks
// (number_swap, synonym) are drawn from streams keyed by `mutation_seed` and
// the site index, so the sites themselves never depend on the seed.
std::vector<MutationSite> enumerate_sites(AttackKind kind,
                                          std::u32string_view text,
                                          const AttackContext& context,
                                          std::uint64_t mutation_seed = 0);

// Round-half-up of theta * total_sites clamped to [0, total_sites], and at
// least 1 when theta > 0 and total_sites > 0.
std::size_t budget(double theta, std::size_t total_sites);

// The first budget(theta, total_sites) entries of a permutation seeded by
// mix_seed(seed, text_digest), sorted ascending. Prefixes nest: a larger
// theta always chooses a superset.
std::vector<std::size_t> select_sites(std::size_t total_sites, double theta,
                                      std::uint64_t seed,
                                      std::uint64_t text_digest);

AttackResult apply_attack(const AttackSpec& spec, std::string_view text,
                          const AttackContext& context);

// Splices `sites` (sorted, non-overlapping) into `text`, right to left.
std::u32string splice_sites(std::u32string_view text,
                            std::span<const MutationSite> sites);

// Defender-side canonicalization: drops zero-width code points, maps
// confusable glyphs back to their canonical letters, and collapses every
// whitespace run to a single space. Idempotent.
std::string normalize(std::string_view text, const ConfusablesTable& table);
std::string normalize(std::string_view text);

}  // namespace detbench

#endif  // DETBENCH_ATTACKS_H_
