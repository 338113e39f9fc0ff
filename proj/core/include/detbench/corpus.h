#ifndef DETBENCH_CORPUS_H_
#define DETBENCH_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "detbench/taxonomy.h"

namespace detbench {

// One text with full provenance.
//
// Invariants (checked by Corpus::from_documents):
//   human   => model = human, decoding = none, attack = none, no lineage ids.
//   machine => model != human, decoding != none, source_id names a human
//              document of the same domain.
//   attack != none => adv_source_id names an unattacked machine document
//              with identical (model, domain, decoding).
struct Document {
  std::string id;
  std::string text;  // UTF-8
  Label label = Label::kHuman;
  Model model = Model::kHuman;
  Domain domain = Domain::kAbstracts;
  Decoding decoding = Decoding::kNone;
  AttackKind attack = AttackKind::kNone;
  std::string source_id;
  std::string adv_source_id;

  bool is_machine() const { return label == Label::kMachine; }
  bool is_attacked() const { return attack != AttackKind::kNone; }

  friend bool operator==(const Document&, const Document&) = default;
};

class FieldPredicate;

enum class Split : std::uint8_t { kTrain, kTest, kCustom };

std::string_view to_string(Split split);

// An immutable, validated, ordered collection of documents. Copies share the
// underlying storage.
class Corpus {
 public:
  Corpus();

  // Validates every invariant and throws IntegrityError on violation.
  // `lineage_known = false` accepts attacked documents without an
  // adv_source_id (files that predate the lineage column).
  static Corpus from_documents(std::vector<Document> documents,
                               Split split = Split::kCustom,
                               bool lineage_known = true);

  std::span<const Document> documents() const { return *documents_; }
  std::size_t size() const { return documents_->size(); }
  bool empty() const { return documents_->empty(); }
  const Document& operator[](std::size_t i) const { return (*documents_)[i]; }

  const Document* find(std::string_view id) const;
  bool contains_id(std::string_view id) const;

  Split split() const { return split_; }
  bool lineage_known() const { return lineage_known_; }

  // Ids referenced by documents of a filtered view whose documents were not
  // retained. Empty for corpora loaded from disk.
  const std::set<std::string>& external_ids() const { return external_ids_; }

 private:
  friend Corpus filter_view(const Corpus& corpus, const FieldPredicate& predicate);

  std::shared_ptr<const std::vector<Document>> documents_;
  std::shared_ptr<const std::unordered_map<std::string_view, std::size_t>> index_;
  std::set<std::string> external_ids_;
  Split split_ = Split::kCustom;
  bool lineage_known_ = true;
};

// record-lines: one JSON object per line with the named fields.
// delimited-table: tab-separated with a header row (see tsv.h for escaping).
enum class CorpusFormat : std::uint8_t { kRecordLines, kDelimitedTable };

std::string_view to_string(CorpusFormat format);
// .jsonl/.ndjson -> record-lines, .tsv/.tab -> delimited-table.
CorpusFormat format_for_path(const std::filesystem::path& path);

Corpus read_corpus(std::istream& in, CorpusFormat format,
                   Split split = Split::kCustom);
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                   Split split = Split::kCustom);
Corpus load_corpus(const std::filesystem::path& path);

// Concatenates several files and validates them as one corpus.
Corpus load_corpora(std::span<const std::filesystem::path> paths,
                    Split split = Split::kCustom);

void write_corpus(std::ostream& out, const Corpus& corpus, CorpusFormat format);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path,
                 CorpusFormat format);

struct Rational {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  // Reduced form; 0/0 is represented as 0/1.
  static Rational of(std::uint64_t numerator, std::uint64_t denominator);
  double value() const;
  std::string str() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

struct ProfileCell {
  Domain domain;
  Model model;
  Decoding decoding;
  AttackKind attack;

  auto tie() const { return std::tuple(domain, model, decoding, attack); }
  friend bool operator<(const ProfileCell& a, const ProfileCell& b) {
    return a.tie() < b.tie();
  }
  friend bool operator==(const ProfileCell&, const ProfileCell&) = default;
};

struct CorpusProfile {
  std::map<ProfileCell, std::size_t> counts;
  std::map<Domain, std::size_t> human_count;
  std::size_t human_total = 0;
  std::size_t machine_total = 0;
  std::size_t unattacked_machine_total = 0;
  Rational machine_to_human_ratio;
  // Machine documents per unattacked machine document; 12/1 for a corpus
  // carrying every attack next to each original generation.
  Rational attack_multiplier;
  std::vector<std::string> warnings;

  std::size_t total() const;
};

// Exact per-cell counts. Deviations from the expected benchmark shape
// (2 generations per human document for API models, 4 for open-weight
// models, and equal attacked counts across attacks) are reported as
// warnings.
CorpusProfile profile_corpus(const Corpus& corpus);

// Conjunction of per-field allowed-value sets. Field names are the schema
// fields (id, text, label, model, domain, decoding, attack, source_id,
// adv_source_id).
class FieldPredicate {
 public:
  FieldPredicate() = default;

  // Subtask A keeps unattacked documents only; Subtask B keeps everything.
  static FieldPredicate subtask_a();
  static FieldPredicate subtask_b();

  // Parses "field=v1|v2,field2=v3". Throws ConfigError on unknown fields or
  // enum values.
  static FieldPredicate parse(std::string_view expression);

  // Adds a constraint; repeated constraints on one field intersect.
  FieldPredicate& require(std::string_view field, std::set<std::string> values);
  FieldPredicate conjoin(const FieldPredicate& other) const;

  bool matches(const Document& doc) const;
  bool empty() const { return constraints_.empty(); }
  const std::map<std::string, std::set<std::string>>& constraints() const {
    return constraints_;
  }
  std::string str() const;

 private:
  std::map<std::string, std::set<std::string>> constraints_;
};

// Documents matching `predicate`, in corpus order. Lineage ids referenced by
// retained documents but not retained themselves are kept in
// external_ids().
Corpus filter_view(const Corpus& corpus, const FieldPredicate& predicate);

}  // namespace detbench

#endif  // DETBENCH_CORPUS_H_
