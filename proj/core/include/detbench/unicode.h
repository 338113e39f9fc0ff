#ifndef DETBENCH_UNICODE_H_
#define DETBENCH_UNICODE_H_

// UTF-8 transcoding and the small amount of character classification the
// attacks need. Text is indexed by Unicode scalar values (char32_t).

#include <string>
#include <string_view>

namespace detbench::unicode {

inline constexpr char32_t kZeroWidthSpace = U'\u200B';

bool is_valid_utf8(std::string_view bytes);

// Throws detbench::ParseError on malformed input.
std::u32string decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view text);
void append_utf8(std::string& out, char32_t cp);

bool is_whitespace(char32_t cp);
// U+200B, U+200C, U+200D, U+2060 and U+FEFF.
bool is_zero_width(char32_t cp);
bool is_punctuation(char32_t cp);
// Anything that is not whitespace, zero-width, punctuation, a symbol or a
// control character.
bool is_word_char(char32_t cp);

// Simple one-to-one case mapping over Basic Latin, Latin-1, Latin
// Extended-A (regular pairs), Greek and Cyrillic. Characters outside those
// blocks are caseless.
bool is_upper(char32_t cp);
bool is_lower(char32_t cp);
inline bool is_cased(char32_t cp) { return is_upper(cp) || is_lower(cp); }
char32_t to_upper(char32_t cp);
char32_t to_lower(char32_t cp);
char32_t flip_case(char32_t cp);

std::u32string to_lower(std::u32string_view text);
std::u32string to_upper(std::u32string_view text);

}  // namespace detbench::unicode

#endif  // DETBENCH_UNICODE_H_
