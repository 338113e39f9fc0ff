#ifndef DETBENCH_TESTS_BUILDERS_H_
#define DETBENCH_TESTS_BUILDERS_H_

#include <string>

#include "detbench/corpus.h"

namespace detbench::testing {

inline Document human_doc(std::string id, Domain domain = Domain::kNews,
                          std::string text = "A human wrote this.") {
  Document d;
  d.id = std::move(id);
  d.text = std::move(text);
  d.domain = domain;
  return d;
}

inline Document machine_doc(std::string id, const Document& source,
                            Model model = Model::kGpt2,
                            Decoding decoding = Decoding::kGreedy,
                            std::string text = "The 3 models wrote 12 of these.") {
  Document d;
  d.id = std::move(id);
  d.text = std::move(text);
  d.label = Label::kMachine;
  d.model = model;
  d.domain = source.domain;
  d.decoding = decoding;
  d.source_id = source.id;
  return d;
}

inline Document attacked_doc(std::string id, const Document& original,
                             AttackKind attack, std::string text = "Attacked text.") {
  Document d = original;
  d.id = std::move(id);
  d.text = std::move(text);
  d.attack = attack;
  d.adv_source_id = original.id;
  return d;
}

}  // namespace detbench::testing

#endif  // DETBENCH_TESTS_BUILDERS_H_
