#ifndef DETBENCH_RANDOM_H_
#define DETBENCH_RANDOM_H_

// Platform-independent seeded randomness.
//
// Every random choice in the toolkit is drawn from std::mt19937_64, whose
// output sequence is fixed by the C++ standard, and reduced to a range with
// rejection sampling rather than std::uniform_int_distribution (whose
// algorithm is implementation-defined). Seeds are combined with the
// SplitMix64 finalizer and text is digested with 64-bit FNV-1a.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace detbench {

// Default master seed for attack generation. Fixed so independent builds
// produce identical attacked corpora.
inline constexpr std::uint64_t kDefaultMasterSeed = 0x5241494432303234ULL;

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

// Seed for one (document, purpose) pair derived from the run's master seed.
std::uint64_t document_seed(std::uint64_t master_seed, std::string_view doc_id,
                            std::string_view purpose);

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  // Uniform double in [0, 1) with 53 random bits.
  double unit();
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  // Standard normal via Box-Muller on unit().
  double normal();

 private:
  std::mt19937_64 engine_;
};

// Fisher-Yates permutation of [0, n).
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

}  // namespace detbench

#endif  // DETBENCH_RANDOM_H_
