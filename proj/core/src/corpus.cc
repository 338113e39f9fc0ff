#include "detbench/corpus.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "detbench/error.h"
#include "detbench/tsv.h"
#include "detbench/unicode.h"

namespace detbench {

namespace {

constexpr std::array<std::string_view, 9> kFields = {
    "id",     "text",   "label",     "model",        "domain",
    "decoding", "attack", "source_id", "adv_source_id"};

std::string describe(const Document& doc, std::size_t index) {
  return "document " + std::to_string(index + 1) + " (id '" + doc.id + "')";
}

template <class T>
T parse_enum(std::optional<T> value, std::string_view field, std::string_view text,
             std::size_t row) {
  if (!value) {
    throw SchemaError("unknown " + std::string(field) + " value '" + std::string(text) +
                      "' (row " + std::to_string(row) + ")");
  }
  return *value;
}

// Fills one field from its on-disk spelling.
void set_field(Document& doc, std::string_view field, std::string value, std::size_t row) {
  if (field == "id") {
    doc.id = std::move(value);
  } else if (field == "text") {
    if (!unicode::is_valid_utf8(value)) throw ParseError("text is not valid UTF-8", row);
    doc.text = std::move(value);
  } else if (field == "label") {
    doc.label = parse_enum(parse_label(value), field, value, row);
  } else if (field == "model") {
    doc.model = parse_enum(parse_model(value), field, value, row);
  } else if (field == "domain") {
    doc.domain = parse_enum(parse_domain(value), field, value, row);
  } else if (field == "decoding") {
    doc.decoding = parse_enum(parse_decoding(value), field, value, row);
  } else if (field == "attack") {
    doc.attack = parse_enum(parse_attack(value), field, value, row);
  } else if (field == "source_id") {
    doc.source_id = std::move(value);
  } else if (field == "adv_source_id") {
    doc.adv_source_id = std::move(value);
  }
}

std::string field_value(const Document& doc, std::string_view field) {
  if (field == "id") return doc.id;
  if (field == "text") return doc.text;
  if (field == "label") return std::string(to_string(doc.label));
  if (field == "model") return std::string(to_string(doc.model));
  if (field == "domain") return std::string(to_string(doc.domain));
  if (field == "decoding") return std::string(to_string(doc.decoding));
  if (field == "attack") return std::string(to_string(doc.attack));
  if (field == "source_id") return doc.source_id;
  return doc.adv_source_id;
}

struct ParsedDocuments {
  std::vector<Document> documents;
  bool lineage_known = true;
};

ParsedDocuments parse_record_lines(std::istream& in) {
  ParsedDocuments parsed;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("malformed record: ") + e.what(), row);
    }
    if (!record.is_object()) throw ParseError("record is not an object", row);
    Document doc;
    for (std::string_view field : kFields) {
      auto it = record.find(field);
      if (it == record.end()) {
        if (field == "adv_source_id") {
          parsed.lineage_known = false;
          continue;
        }
        throw SchemaError("missing field '" + std::string(field) + "' (row " +
                          std::to_string(row) + ")");
      }
      if (!it->is_string()) {
        throw SchemaError("field '" + std::string(field) + "' must be a string (row " +
                          std::to_string(row) + ")");
      }
      set_field(doc, field, it->get<std::string>(), row);
    }
    parsed.documents.push_back(std::move(doc));
  }
  return parsed;
}

ParsedDocuments parse_delimited(std::istream& in) {
  ParsedDocuments parsed;
  const tsv::Table table = tsv::Table::read(in, "corpus table");
  std::vector<std::pair<std::string_view, std::size_t>> columns;
  for (std::string_view field : kFields) {
    if (auto column = table.column(field)) {
      columns.emplace_back(field, *column);
    } else if (field == "adv_source_id") {
      parsed.lineage_known = false;
    } else {
      table.require_column(field);
    }
  }
  for (const tsv::Row& row : table.rows()) {
    Document doc;
    for (const auto& [field, column] : columns) set_field(doc, field, row.fields[column], row.line);
    parsed.documents.push_back(std::move(doc));
  }
  return parsed;
}

ParsedDocuments parse_documents(std::istream& in, CorpusFormat format) {
  return format == CorpusFormat::kRecordLines ? parse_record_lines(in) : parse_delimited(in);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

}  // namespace

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kTest:
      return "test";
    case Split::kCustom:
      return "custom";
  }
  return "custom";
}

Corpus::Corpus()
    : documents_(std::make_shared<std::vector<Document>>()),
      index_(std::make_shared<std::unordered_map<std::string_view, std::size_t>>()) {}

Corpus Corpus::from_documents(std::vector<Document> documents, Split split,
                              bool lineage_known) {
  auto storage = std::make_shared<std::vector<Document>>(std::move(documents));
  auto index = std::make_shared<std::unordered_map<std::string_view, std::size_t>>();
  const std::vector<Document>& docs = *storage;
  index->reserve(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (docs[i].id.empty()) throw IntegrityError(describe(docs[i], i) + ": empty id");
    if (!index->emplace(docs[i].id, i).second) {
      throw IntegrityError(describe(docs[i], i) + ": duplicate id");
    }
  }
  auto lookup = [&](const std::string& id) -> const Document* {
    auto it = index->find(id);
    return it == index->end() ? nullptr : &docs[it->second];
  };
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const Document& doc = docs[i];
    const std::string where = describe(doc, i);
    if (!doc.is_machine()) {
      if (doc.model != Model::kHuman || doc.decoding != Decoding::kNone ||
          doc.attack != AttackKind::kNone) {
        throw IntegrityError(where + ": human documents need model=human, decoding=none, attack=none");
      }
      if (!doc.source_id.empty() || !doc.adv_source_id.empty()) {
        throw IntegrityError(where + ": human documents carry no lineage ids");
      }
      continue;
    }
    if (doc.model == Model::kHuman) throw IntegrityError(where + ": machine document with model=human");
    if (doc.decoding == Decoding::kNone) {
      throw IntegrityError(where + ": machine document with decoding=none");
    }
    const Document* source = lookup(doc.source_id);
    if (source == nullptr) {
      throw IntegrityError(where + ": source_id '" + doc.source_id + "' not found");
    }
    if (source->is_machine() || source->domain != doc.domain) {
      throw IntegrityError(where + ": source_id '" + doc.source_id +
                           "' is not a human document of the same domain");
    }
    if (!doc.is_attacked()) {
      if (!doc.adv_source_id.empty()) {
        throw IntegrityError(where + ": unattacked document with adv_source_id");
      }
      continue;
    }
    if (doc.adv_source_id.empty()) {
      if (lineage_known) throw IntegrityError(where + ": attacked document without adv_source_id");
      continue;
    }
    const Document* original = lookup(doc.adv_source_id);
    if (original == nullptr) {
      throw IntegrityError(where + ": adv_source_id '" + doc.adv_source_id + "' not found");
    }
    if (!original->is_machine() || original->is_attacked() || original->model != doc.model ||
        original->domain != doc.domain || original->decoding != doc.decoding) {
      throw IntegrityError(where + ": adv_source_id '" + doc.adv_source_id +
                           "' is not an unattacked machine document with the same "
                           "model, domain and decoding");
    }
  }
  Corpus corpus;
  corpus.documents_ = std::move(storage);
  corpus.index_ = std::move(index);
  corpus.split_ = split;
  corpus.lineage_known_ = lineage_known;
  return corpus;
}

const Document* Corpus::find(std::string_view id) const {
  auto it = index_->find(id);
  return it == index_->end() ? nullptr : &(*documents_)[it->second];
}

bool Corpus::contains_id(std::string_view id) const {
  return index_->contains(id) || external_ids_.contains(std::string(id));
}

std::string_view to_string(CorpusFormat format) {
  return format == CorpusFormat::kRecordLines ? "record-lines" : "delimited-table";
}

CorpusFormat format_for_path(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".jsonl" || ext == ".ndjson") return CorpusFormat::kRecordLines;
  if (ext == ".tsv" || ext == ".tab") return CorpusFormat::kDelimitedTable;
  throw ConfigError("cannot infer corpus format from '" + path.string() +
                    "' (expected .jsonl, .ndjson, .tsv or .tab)");
}

Corpus read_corpus(std::istream& in, CorpusFormat format, Split split) {
  ParsedDocuments parsed = parse_documents(in, format);
  return Corpus::from_documents(std::move(parsed.documents), split, parsed.lineage_known);
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format, Split split) {
  std::ifstream in = open_input(path);
  return read_corpus(in, format, split);
}

Corpus load_corpus(const std::filesystem::path& path) {
  return load_corpus(path, format_for_path(path));
}

Corpus load_corpora(std::span<const std::filesystem::path> paths, Split split) {
  std::vector<Document> all;
  bool lineage_known = true;
  for (const auto& path : paths) {
    std::ifstream in = open_input(path);
    ParsedDocuments parsed = parse_documents(in, format_for_path(path));
    lineage_known = lineage_known && parsed.lineage_known;
    std::move(parsed.documents.begin(), parsed.documents.end(), std::back_inserter(all));
  }
  return Corpus::from_documents(std::move(all), split, lineage_known);
}

void write_corpus(std::ostream& out, const Corpus& corpus, CorpusFormat format) {
  if (format == CorpusFormat::kRecordLines) {
    for (const Document& doc : corpus.documents()) {
      nlohmann::ordered_json record;
      for (std::string_view field : kFields) record[std::string(field)] = field_value(doc, field);
      out << record.dump() << '\n';
    }
    return;
  }
  std::vector<std::string> header(kFields.begin(), kFields.end());
  tsv::write_row(out, header);
  for (const Document& doc : corpus.documents()) {
    if (!doc.id.empty() && doc.id.front() == '#') {
      throw SchemaError("id '" + doc.id + "' cannot start with '#' in a delimited table");
    }
    std::vector<std::string> row;
    row.reserve(kFields.size());
    for (std::string_view field : kFields) row.push_back(field_value(doc, field));
    tsv::write_row(out, row);
  }
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path,
                 CorpusFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  write_corpus(out, corpus, format);
  if (!out) throw Error("write failed: " + path.string());
}

Rational Rational::of(std::uint64_t numerator, std::uint64_t denominator) {
  if (denominator == 0) return {0, 1};
  const std::uint64_t g = std::gcd(numerator, denominator);
  return {numerator / g, denominator / g};
}

double Rational::value() const {
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

std::string Rational::str() const {
  return std::to_string(numerator) + ":" + std::to_string(denominator);
}

std::size_t CorpusProfile::total() const {
  std::size_t sum = 0;
  for (const auto& [cell, count] : counts) sum += count;
  return sum;
}

CorpusProfile profile_corpus(const Corpus& corpus) {
  CorpusProfile profile;
  // (domain, model, decoding) -> count per attack
  std::map<std::tuple<Domain, Model, Decoding>, std::map<AttackKind, std::size_t>> by_generation;
  for (const Document& doc : corpus.documents()) {
    ++profile.counts[ProfileCell{doc.domain, doc.model, doc.decoding, doc.attack}];
    if (!doc.is_machine()) {
      ++profile.human_count[doc.domain];
      ++profile.human_total;
      continue;
    }
    ++profile.machine_total;
    if (!doc.is_attacked()) ++profile.unattacked_machine_total;
    ++by_generation[{doc.domain, doc.model, doc.decoding}][doc.attack];
  }
  profile.machine_to_human_ratio = Rational::of(profile.machine_total, profile.human_total);
  profile.attack_multiplier = Rational::of(profile.machine_total, profile.unattacked_machine_total);

  std::map<std::pair<Domain, Model>, std::size_t> generations;
  for (const auto& [key, per_attack] : by_generation) {
    const auto& [domain, model, decoding] = key;
    const std::string cell = std::string(to_string(domain)) + "/" + std::string(to_string(model)) +
                             "/" + std::string(to_string(decoding));
    if (is_api_model(model) && (decoding == Decoding::kGreedyRepPenalty ||
                                decoding == Decoding::kSamplingRepPenalty)) {
      profile.warnings.push_back(cell + ": API model with repetition-penalty decoding");
    }
    auto original = per_attack.find(AttackKind::kNone);
    const std::size_t unattacked = original == per_attack.end() ? 0 : original->second;
    generations[{domain, model}] += unattacked;
    bool uneven = false;
    for (const auto& [attack, count] : per_attack) {
      if (attack != AttackKind::kNone && count != unattacked) uneven = true;
    }
    if (uneven) {
      profile.warnings.push_back(cell + ": attacked counts differ from the " +
                                 std::to_string(unattacked) + " unattacked documents");
    }
  }
  for (const auto& [key, count] : generations) {
    const auto& [domain, model] = key;
    auto humans = profile.human_count.find(domain);
    const std::size_t human = humans == profile.human_count.end() ? 0 : humans->second;
    const std::size_t expected =
        human * static_cast<std::size_t>(generations_per_human_document(model));
    if (count != expected) {
      profile.warnings.push_back(
          std::string(to_string(domain)) + "/" + std::string(to_string(model)) + ": " +
          std::to_string(count) + " unattacked generations, expected " +
          std::to_string(expected) + " (" + std::to_string(generations_per_human_document(model)) +
          " per human document)");
    }
  }
  return profile;
}

FieldPredicate FieldPredicate::subtask_a() {
  FieldPredicate p;
  p.require("attack", {"none"});
  return p;
}

FieldPredicate FieldPredicate::subtask_b() { return {}; }

FieldPredicate& FieldPredicate::require(std::string_view field, std::set<std::string> values) {
  if (std::find(kFields.begin(), kFields.end(), field) == kFields.end()) {
    throw ConfigError("unknown field '" + std::string(field) + "' in filter");
  }
  auto check = [&](auto parse) {
    for (const std::string& v : values) {
      if (!parse(v)) {
        throw ConfigError("unknown " + std::string(field) + " value '" + v + "' in filter");
      }
    }
  };
  if (field == "label") check(parse_label);
  if (field == "model") check(parse_model);
  if (field == "domain") check(parse_domain);
  if (field == "decoding") check(parse_decoding);
  if (field == "attack") check(parse_attack);

  auto [it, inserted] = constraints_.try_emplace(std::string(field), std::move(values));
  if (!inserted) {
    std::set<std::string> both;
    std::set_intersection(it->second.begin(), it->second.end(), values.begin(), values.end(),
                          std::inserter(both, both.end()));
    it->second = std::move(both);
  }
  return *this;
}

FieldPredicate FieldPredicate::parse(std::string_view expression) {
  FieldPredicate predicate;
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  while (!trim(expression).empty()) {
    const std::size_t comma = expression.find(',');
    std::string_view clause = trim(expression.substr(0, comma));
    const std::size_t eq = clause.find('=');
    if (eq == std::string_view::npos || trim(clause.substr(0, eq)).empty()) {
      throw ConfigError("malformed filter clause '" + std::string(clause) +
                        "' (expected field=value[|value...])");
    }
    std::set<std::string> values;
    std::string_view list = clause.substr(eq + 1);
    while (true) {
      const std::size_t bar = list.find('|');
      std::string_view v = trim(list.substr(0, bar));
      if (v.empty()) throw ConfigError("empty value in filter clause '" + std::string(clause) + "'");
      values.emplace(v);
      if (bar == std::string_view::npos) break;
      list.remove_prefix(bar + 1);
    }
    predicate.require(trim(clause.substr(0, eq)), std::move(values));
    if (comma == std::string_view::npos) break;
    expression.remove_prefix(comma + 1);
  }
  return predicate;
}

FieldPredicate FieldPredicate::conjoin(const FieldPredicate& other) const {
  FieldPredicate out = *this;
  for (const auto& [field, values] : other.constraints_) out.require(field, values);
  return out;
}

bool FieldPredicate::matches(const Document& doc) const {
  for (const auto& [field, values] : constraints_) {
    if (!values.contains(field_value(doc, field))) return false;
  }
  return true;
}

std::string FieldPredicate::str() const {
  std::string out;
  for (const auto& [field, values] : constraints_) {
    if (!out.empty()) out += ',';
    out += field + '=';
    bool first = true;
    for (const std::string& v : values) {
      if (!first) out += '|';
      out += v;
      first = false;
    }
  }
  return out;
}

Corpus filter_view(const Corpus& corpus, const FieldPredicate& predicate) {
  auto storage = std::make_shared<std::vector<Document>>();
  for (const Document& doc : corpus.documents()) {
    if (predicate.matches(doc)) storage->push_back(doc);
  }
  auto index = std::make_shared<std::unordered_map<std::string_view, std::size_t>>();
  for (std::size_t i = 0; i < storage->size(); ++i) index->emplace((*storage)[i].id, i);

  Corpus view;
  view.split_ = corpus.split_;
  view.lineage_known_ = corpus.lineage_known_;
  for (const Document& doc : *storage) {
    for (const std::string* ref : {&doc.source_id, &doc.adv_source_id}) {
      if (!ref->empty() && !index->contains(*ref)) view.external_ids_.insert(*ref);
    }
  }
  view.documents_ = std::move(storage);
  view.index_ = std::move(index);
  return view;
}

}  // namespace detbench
