#include "detbench/attacks.h"
#include "detbench/unicode.h"

namespace detbench {

std::string normalize(std::string_view text, const ConfusablesTable& table) {
  const std::u32string decoded = unicode::decode_utf8(text);
  std::u32string out;
  out.reserve(decoded.size());
  bool in_space = false;
  for (char32_t cp : decoded) {
    if (unicode::is_zero_width(cp)) continue;
    if (unicode::is_whitespace(cp)) {
      if (!in_space) out.push_back(U' ');
      in_space = true;
      continue;
    }
    in_space = false;
    out.push_back(table.canonical(cp).value_or(cp));
  }
  return unicode::encode_utf8(out);
}

std::string normalize(std::string_view text) {
  return normalize(text, ResourceSet::builtin().confusables());
}

}  // namespace detbench
