#ifndef DETBENCH_SYNTHETIC_H_
#define DETBENCH_SYNTHETIC_H_

// Synthetic corpora with the benchmark's shape, for tests, benchmarks and
// demos. Texts are English-like sentences that exercise every attack
// surface (articles, digits, dictionary words, sentence breaks).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "detbench/calibration.h"
#include "detbench/corpus.h"
#include "detbench/random.h"

namespace detbench {

struct SyntheticCorpusOptions {
  std::size_t humans_per_domain = 2;
  std::vector<Domain> domains{kAllDomains.begin(), kAllDomains.end()};
  std::vector<Model> models{kGeneratorModels.begin(), kGeneratorModels.end()};
  std::size_t sentences_per_document = 4;
  std::uint64_t seed = 1;
};

// Each human document gets generations_per_human_document(model) machine
// counterparts per model (greedy and sampling for API models, plus the two
// repetition-penalty variants for open-weight models).
Corpus make_synthetic_corpus(const SyntheticCorpusOptions& options);

std::string synthetic_text(SeededRng& rng, std::size_t sentences);

// Perfectly separable scores: human ~ U[0, 0.1], machine ~ U[0.9, 1.0].
std::vector<ScoreRecord> separable_scores(const Corpus& corpus,
                                          const std::string& detector_id,
                                          std::uint64_t seed);

}  // namespace detbench

#endif  // DETBENCH_SYNTHETIC_H_
