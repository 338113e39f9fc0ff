#include "detbench/unicode.h"

#include "detbench/error.h"

namespace detbench::unicode {
namespace {

// Decodes one scalar value starting at bytes[i]; returns the number of bytes
// consumed or 0 when the sequence is malformed.
std::size_t decode_one(std::string_view bytes, std::size_t i, char32_t& out) {
  const auto b0 = static_cast<unsigned char>(bytes[i]);
  if (b0 < 0x80) {
    out = b0;
    return 1;
  }
  std::size_t len;
  char32_t cp;
  char32_t min;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
    min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
    min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
    min = 0x10000;
  } else {
    return 0;
  }
  if (i + len > bytes.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(bytes[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  out = cp;
  return len;
}

// Regular upper/lower pairs: [upper_lo, upper_hi] maps to lower by +delta.
struct OffsetRange {
  char32_t lo;
  char32_t hi;
  char32_t delta;
};

constexpr OffsetRange kOffsetRanges[] = {
    {U'A', U'Z', 0x20},
    {0x00C0, 0x00D6, 0x20},
    {0x00D8, 0x00DE, 0x20},
    {0x0391, 0x03A1, 0x20},
    {0x03A3, 0x03A9, 0x20},
    {0x0410, 0x042F, 0x20},
    {0x0400, 0x040F, 0x50},
};

// Latin Extended-A blocks where even code points are upper case and the
// following odd code point is its lower case.
struct EvenOddRange {
  char32_t lo;
  char32_t hi;
};

constexpr EvenOddRange kEvenOddRanges[] = {
    {0x0100, 0x012F},
    {0x0132, 0x0137},
    {0x014A, 0x0177},
};

}  // namespace

bool is_valid_utf8(std::string_view bytes) {
  char32_t cp;
  for (std::size_t i = 0; i < bytes.size();) {
    const std::size_t n = decode_one(bytes, i, cp);
    if (n == 0) return false;
    i += n;
  }
  return true;
}

std::u32string decode_utf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  char32_t cp;
  for (std::size_t i = 0; i < bytes.size();) {
    const std::size_t n = decode_one(bytes, i, cp);
    if (n == 0) {
      throw ParseError("invalid UTF-8 at byte offset " + std::to_string(i), 0);
    }
    out.push_back(cp);
    i += n;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) append_utf8(out, cp);
  return out;
}

bool is_whitespace(char32_t cp) {
  switch (cp) {
    case 0x09:
    case 0x0A:
    case 0x0B:
    case 0x0C:
    case 0x0D:
    case 0x20:
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_zero_width(char32_t cp) {
  return cp == 0x200B || cp == 0x200C || cp == 0x200D || cp == 0x2060 ||
         cp == 0xFEFF;
}

bool is_punctuation(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  return (cp >= 0xA1 && cp <= 0xBF && cp != 0xAA && cp != 0xB5 && cp != 0xBA) ||
         cp == 0xD7 || cp == 0xF7 || (cp >= 0x2010 && cp <= 0x205E) ||
         (cp >= 0x3001 && cp <= 0x303F);
}

bool is_word_char(char32_t cp) {
  if (cp < 0x20 || (cp >= 0x7F && cp < 0xA0)) return false;
  if (is_whitespace(cp) || is_zero_width(cp) || is_punctuation(cp)) return false;
  // Arrows, mathematical operators, technical and miscellaneous symbols,
  // dingbats, and emoji.
  if (cp >= 0x2190 && cp <= 0x2BFF) return false;
  if (cp >= 0x1F000 && cp <= 0x1FAFF) return false;
  if (cp >= 0xFE00 && cp <= 0xFE0F) return false;
  return true;
}

bool is_upper(char32_t cp) {
  for (const auto& r : kOffsetRanges) {
    if (cp >= r.lo && cp <= r.hi) return true;
  }
  for (const auto& r : kEvenOddRanges) {
    if (cp >= r.lo && cp <= r.hi) return (cp - r.lo) % 2 == 0;
  }
  return cp == 0x0178;
}

bool is_lower(char32_t cp) {
  for (const auto& r : kOffsetRanges) {
    if (cp >= r.lo + r.delta && cp <= r.hi + r.delta) return true;
  }
  for (const auto& r : kEvenOddRanges) {
    if (cp >= r.lo && cp <= r.hi) return (cp - r.lo) % 2 == 1;
  }
  return cp == 0x00FF;
}

char32_t to_lower(char32_t cp) {
  for (const auto& r : kOffsetRanges) {
    if (cp >= r.lo && cp <= r.hi) return cp + r.delta;
  }
  for (const auto& r : kEvenOddRanges) {
    if (cp >= r.lo && cp <= r.hi && (cp - r.lo) % 2 == 0) return cp + 1;
  }
  if (cp == 0x0178) return 0x00FF;
  return cp;
}

char32_t to_upper(char32_t cp) {
  for (const auto& r : kOffsetRanges) {
    if (cp >= r.lo + r.delta && cp <= r.hi + r.delta) return cp - r.delta;
  }
  for (const auto& r : kEvenOddRanges) {
    if (cp >= r.lo && cp <= r.hi && (cp - r.lo) % 2 == 1) return cp - 1;
  }
  if (cp == 0x00FF) return 0x0178;
  return cp;
}

char32_t flip_case(char32_t cp) {
  if (is_upper(cp)) return to_lower(cp);
  if (is_lower(cp)) return to_upper(cp);
  return cp;
}

std::u32string to_lower(std::u32string_view text) {
  std::u32string out(text);
  for (char32_t& cp : out) cp = to_lower(cp);
  return out;
}

std::u32string to_upper(std::u32string_view text) {
  std::u32string out(text);
  for (char32_t& cp : out) cp = to_upper(cp);
  return out;
}

}  // namespace detbench::unicode
