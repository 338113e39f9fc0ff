#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "detbench/attacks.h"
#include "detbench/error.h"
#include "detbench/random.h"
#include "detbench/synthetic.h"
#include "detbench/unicode.h"

namespace detbench {
namespace {

const AttackContext& context() {
  static const AttackContext ctx;
  return ctx;
}

std::vector<MutationSite> sites_of(AttackKind kind, std::string_view text,
                                   std::uint64_t seed = 0) {
  return enumerate_sites(kind, unicode::decode_utf8(text), context(), seed);
}

std::string attack(AttackKind kind, double theta, std::string_view text,
                   std::uint64_t seed = 1) {
  return apply_attack(AttackSpec{kind, theta, seed}, text, context()).text;
}

TEST(Taxonomy, DefaultThetas) {
  const std::vector<std::pair<AttackKind, double>> expected{
      {AttackKind::kAlternativeSpelling, 1.00}, {AttackKind::kArticleDeletion, 0.50},
      {AttackKind::kHomoglyph, 1.00},           {AttackKind::kInsertParagraphs, 0.50},
      {AttackKind::kNumberSwap, 0.50},          {AttackKind::kParaphrase, 1.00},
      {AttackKind::kMisspelling, 0.20},         {AttackKind::kSynonym, 0.50},
      {AttackKind::kUpperLowerSwap, 0.05},      {AttackKind::kWhitespace, 0.20},
      {AttackKind::kZeroWidthSpace, 1.00}};
  for (const auto& [kind, theta] : expected) {
    EXPECT_DOUBLE_EQ(default_theta(kind), theta) << to_string(kind);
  }
  for (AttackKind kind : kAllAttackKinds) {
    EXPECT_EQ(parse_attack(to_string(kind)), kind);
  }
}

TEST(Sites, ArticleDeletionHandEnumerated) {
  auto sites = sites_of(AttackKind::kArticleDeletion, "the cat saw a dog");
  ASSERT_EQ(sites.size(), 2u);
  EXPECT_EQ(sites[0], (MutationSite{0, 4, U""}));
  EXPECT_EQ(sites[1], (MutationSite{12, 14, U""}));
  // Trailing article takes the preceding space; "An" is matched in any case.
  auto end = sites_of(AttackKind::kArticleDeletion, "An apple, then the");
  ASSERT_EQ(end.size(), 2u);
  EXPECT_EQ(end[0], (MutationSite{0, 3, U""}));
  EXPECT_EQ(end[1], (MutationSite{14, 18, U""}));
  EXPECT_TRUE(sites_of(AttackKind::kArticleDeletion, "theater and anagram").empty());
}

TEST(Sites, NumberSwapEmptyWithoutDigits) {
  EXPECT_TRUE(sites_of(AttackKind::kNumberSwap, "no digits here").empty());
}

TEST(Sites, NumberSwapChangesEveryDigit) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto sites = sites_of(AttackKind::kNumberSwap, "In 1999 about 007 of 40 came", seed);
    ASSERT_EQ(sites.size(), 3u);
    const std::u32string originals[] = {U"1999", U"007", U"40"};
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& rep = sites[k].replacement;
      ASSERT_EQ(rep.size(), originals[k].size());
      std::size_t first = 0;
      while (first + 1 < rep.size() && originals[k][first] == U'0') {
        EXPECT_EQ(rep[first], U'0');
        ++first;
      }
      EXPECT_NE(rep[first], U'0');
      for (std::size_t i = first; i < rep.size(); ++i) {
        EXPECT_NE(rep[i], originals[k][i]);
        EXPECT_TRUE(rep[i] >= U'0' && rep[i] <= U'9');
      }
    }
  }
  auto zero = sites_of(AttackKind::kNumberSwap, "0");
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_NE(zero[0].replacement, U"0");
}

TEST(Sites, ZeroWidthBetweenNonWhitespace) {
  auto sites = sites_of(AttackKind::kZeroWidthSpace, "hi");
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_EQ(sites[0], (MutationSite{1, 1, U"\u200B"}));
  EXPECT_EQ(sites_of(AttackKind::kZeroWidthSpace, "a b c").size(), 0u);
  EXPECT_EQ(sites_of(AttackKind::kZeroWidthSpace, "ab, cd").size(), 3u);
}

TEST(Sites, WhitespaceOnePerGap) {
  auto sites = sites_of(AttackKind::kWhitespace, "one two,  three.\nfour");
  ASSERT_EQ(sites.size(), 3u);
  EXPECT_EQ(sites[0].begin, 3u);
  EXPECT_EQ(sites[1].begin, 8u);
  EXPECT_EQ(sites[2].begin, 16u);
  EXPECT_TRUE(sites_of(AttackKind::kWhitespace, "one,two").empty());
}

TEST(Sites, InsertParagraphsSkipsExistingParagraphs) {
  auto sites = sites_of(AttackKind::kInsertParagraphs, "A. B!\n\nC? D");
  ASSERT_EQ(sites.size(), 2u);
  EXPECT_EQ(sites[0], (MutationSite{2, 3, U"\n\n"}));
  EXPECT_EQ(sites[1], (MutationSite{9, 10, U"\n\n"}));
}

TEST(Sites, DictionaryAttacksKeepCasing) {
  auto spelling = sites_of(AttackKind::kAlternativeSpelling, "Color and COLOR");
  ASSERT_EQ(spelling.size(), 2u);
  EXPECT_EQ(spelling[0].replacement, U"Colour");
  EXPECT_EQ(spelling[1].replacement, U"COLOUR");
  auto misspelled = sites_of(AttackKind::kMisspelling, "I believe it");
  ASSERT_EQ(misspelled.size(), 1u);
  EXPECT_EQ(misspelled[0].replacement, U"beleive");
}

TEST(Sites, SynonymReplacementsComeFromTheLexicon) {
  const std::string text = "The big dog and the small cat.";
  auto sites = sites_of(AttackKind::kSynonym, text, 9);
  ASSERT_EQ(sites.size(), 2u);
  EXPECT_TRUE(sites[0].replacement == U"large" || sites[0].replacement == U"huge");
  EXPECT_TRUE(sites[1].replacement == U"little" || sites[1].replacement == U"tiny");
  // Sites never depend on the seed; only replacements may.
  auto other = sites_of(AttackKind::kSynonym, text, 10);
  ASSERT_EQ(other.size(), sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    EXPECT_EQ(other[i].begin, sites[i].begin);
    EXPECT_EQ(other[i].end, sites[i].end);
  }
}

TEST(Sites, AreSortedAndDisjoint) {
  SeededRng rng(77);
  for (int i = 0; i < 300; ++i) {
    const std::string text = synthetic_text(rng, 1 + rng.below(5));
    for (AttackKind kind : kAllAttackKinds) {
      if (kind == AttackKind::kParaphrase) continue;
      auto sites = sites_of(kind, text, i);
      for (std::size_t k = 1; k < sites.size(); ++k) {
        ASSERT_LE(sites[k - 1].end, sites[k].begin) << to_string(kind) << ": " << text;
        if (sites[k - 1].begin == sites[k - 1].end) {
          ASSERT_LT(sites[k - 1].begin, sites[k].begin);
        }
      }
      EXPECT_EQ(sites, sites_of(kind, text, i));
    }
  }
}

TEST(Budget, Examples) {
  EXPECT_EQ(budget(1.0, 7), 7u);
  EXPECT_EQ(budget(0.5, 2), 1u);
  EXPECT_EQ(budget(0.05, 10), 1u);
  EXPECT_EQ(budget(0.05, 100), 5u);
  EXPECT_EQ(budget(0.5, 3), 2u);
  EXPECT_EQ(budget(0.0, 10), 0u);
  EXPECT_EQ(budget(0.5, 0), 0u);
  EXPECT_EQ(budget(0.01, 1), 1u);
  EXPECT_EQ(budget(0.33, 1000), 330u);
}

TEST(Budget, MatchesIntegerOracle) {
  // Round-half-up on exact rationals: theta = p/100.
  for (std::size_t p = 0; p <= 100; ++p) {
    for (std::size_t n = 0; n <= 300; ++n) {
      std::size_t expected = (2 * p * n + 100) / 200;
      if (p > 0 && n > 0) expected = std::max<std::size_t>(expected, 1);
      expected = std::min(expected, n);
      ASSERT_EQ(budget(static_cast<double>(p) / 100.0, n), expected) << p << " " << n;
    }
  }
}

TEST(Select, FullAndEmptyBudgets) {
  std::vector<std::size_t> all(10);
  for (std::size_t i = 0; i < 10; ++i) all[i] = i;
  for (std::uint64_t seed : {1ULL, 99ULL, 12345ULL}) {
    EXPECT_EQ(select_sites(10, 1.0, seed, 5), all);
    EXPECT_TRUE(select_sites(10, 0.0, seed, 5).empty());
  }
}

TEST(Select, ReplayAndSeedSensitivity) {
  auto a = select_sites(100, 0.5, 1, 42);
  EXPECT_EQ(a.size(), 50u);
  EXPECT_EQ(a, select_sites(100, 0.5, 1, 42));
  EXPECT_NE(a, select_sites(100, 0.5, 2, 42));
  EXPECT_NE(a, select_sites(100, 0.5, 1, 43));
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_EQ(std::set<std::size_t>(a.begin(), a.end()).size(), a.size());
}

TEST(Select, LargerThetaChoosesSuperset) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto small = select_sites(40, 0.2, seed, 7);
    auto large = select_sites(40, 0.6, seed, 7);
    EXPECT_TRUE(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  }
}

TEST(Apply, ZeroWidthFullBudget) {
  EXPECT_EQ(attack(AttackKind::kZeroWidthSpace, 1.0, "ab"), "a\u200Bb");
}

TEST(Apply, UpperLowerFlipsExactlyFive) {
  std::string text;
  for (int i = 0; i < 100; ++i) text += static_cast<char>('a' + i % 26);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto result = apply_attack({AttackKind::kUpperLowerSwap, 0.05, seed}, text, context());
    EXPECT_EQ(result.total_sites, 100u);
    EXPECT_EQ(result.mutated_sites, 5u);
    ASSERT_EQ(result.text.size(), text.size());
    int flipped = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (result.text[i] != text[i]) {
        EXPECT_EQ(result.text[i], text[i] - 'a' + 'A');
        ++flipped;
      }
    }
    EXPECT_EQ(flipped, 5);
  }
}

TEST(Apply, HomoglyphMatchesTableLookup) {
  const auto& table = context().resources.confusables();
  std::u32string expected;
  for (char32_t c : std::u32string(U"paid")) expected += table.confusable(c).value_or(c);
  const std::string out = attack(AttackKind::kHomoglyph, 1.0, "paid");
  EXPECT_EQ(out, unicode::encode_utf8(expected));
  EXPECT_NE(out, "paid");
  EXPECT_EQ(unicode::decode_utf8(out).size(), 4u);
}

TEST(Apply, TextChangesIffSomethingIsMutated) {
  SeededRng rng(5);
  for (int i = 0; i < 200; ++i) {
    const std::string text = synthetic_text(rng, 1 + rng.below(4));
    for (AttackKind kind : kAllAttackKinds) {
      for (double theta : {0.0, 0.2, 1.0}) {
        auto result = apply_attack({kind, theta, static_cast<std::uint64_t>(i)}, text, context());
        EXPECT_EQ(result.mutated_sites, budget(theta, result.total_sites));
        EXPECT_EQ(result.text != text, result.mutated_sites > 0)
            << to_string(kind) << " theta " << theta << ": " << text;
      }
    }
  }
}

TEST(Apply, RejectsInvalidSpecs) {
  EXPECT_THROW(apply_attack({AttackKind::kNone, 1.0, 0}, "x", context()), ConfigError);
  EXPECT_THROW(apply_attack({AttackKind::kHomoglyph, 1.5, 0}, "x", context()), ConfigError);
  EXPECT_THROW(apply_attack({AttackKind::kHomoglyph, -0.1, 0}, "x", context()), ConfigError);
}

TEST(Apply, MissingResourceDirectoryFails) {
  AttackContext ctx;
  ctx.resources = ResourceSet::from_directory("/nonexistent/detbench");
  EXPECT_THROW(apply_attack({AttackKind::kHomoglyph, 1.0, 0}, "paid", ctx), ResourceError);
  // Attacks without dictionaries never touch the directory.
  EXPECT_NO_THROW(apply_attack({AttackKind::kZeroWidthSpace, 1.0, 0}, "paid", ctx));
}

TEST(Normalize, Idempotent) {
  SeededRng rng(8);
  for (int i = 0; i < 200; ++i) {
    std::string text = synthetic_text(rng, 3);
    text = attack(AttackKind::kHomoglyph, 1.0, attack(AttackKind::kZeroWidthSpace, 0.5, text));
    const std::string once = normalize(text);
    EXPECT_EQ(normalize(once), once);
  }
  EXPECT_EQ(normalize("a  b\n\n\nc\u200B\u0430"), "a b ca");
}

TEST(Normalize, UndoesInvisibleAttacks) {
  SeededRng rng(9);
  for (int i = 0; i < 300; ++i) {
    const std::string text = synthetic_text(rng, 1 + rng.below(6));
    for (AttackKind kind : {AttackKind::kZeroWidthSpace, AttackKind::kHomoglyph,
                            AttackKind::kWhitespace, AttackKind::kInsertParagraphs}) {
      EXPECT_EQ(normalize(attack(kind, 1.0, text, i)), normalize(text))
          << to_string(kind) << ": " << text;
    }
  }
}

TEST(Normalize, DoesNotUndoDeletionsOrNumberSwaps) {
  const std::string text = "The 3 cats ate a fish.";
  EXPECT_NE(normalize(attack(AttackKind::kArticleDeletion, 0.5, text)), normalize(text));
  EXPECT_NE(normalize(attack(AttackKind::kNumberSwap, 0.5, text)), normalize(text));
}

}  // namespace
}  // namespace detbench
