#include "stylofuse/unicode.hpp"

#include <algorithm>
#include <array>

namespace stylofuse::unicode {

namespace {

struct Range {
  char32_t lo;
  char32_t hi;  // inclusive
};

// Sorted, non-overlapping codepoint ranges counted as word characters.
// Covers the scripts this pipeline targets; anything outside splits tokens.
constexpr std::array<Range, 33> kWordRanges = {{
    {0x0030, 0x0039},  // digits
    {0x0041, 0x005A},  // A-Z
    {0x0061, 0x007A},  // a-z
    {0x00AA, 0x00AA},  // feminine ordinal
    {0x00B5, 0x00B5},  // micro sign
    {0x00BA, 0x00BA},  // masculine ordinal
    {0x00C0, 0x00D6},  // Latin-1 letters (multiplication sign excluded)
    {0x00D8, 0x00F6},
    {0x00F8, 0x02AF},  // Latin Extended-A/B, IPA
    {0x0300, 0x036F},  // combining diacritical marks
    {0x0370, 0x037D},  // Greek (question mark 0x37E excluded)
    {0x037F, 0x0386},
    {0x0388, 0x03FF},  // Greek (ano teleia 0x387 excluded)
    {0x0400, 0x04FF},  // Cyrillic
    {0x0531, 0x0587},  // Armenian
    {0x0591, 0x05BD},  // Hebrew points (maqaf 0x5BE excluded)
    {0x05BF, 0x05BF},
    {0x05C1, 0x05C2},
    {0x05C4, 0x05C5},
    {0x05C7, 0x05C7},
    {0x05D0, 0x05F2},  // Hebrew letters
    {0x0610, 0x061A},  // Arabic honorific marks (combining)
    {0x0620, 0x0669},  // Arabic letters, tatweel, harakat, Arabic-Indic digits
    {0x066E, 0x06D3},  // Arabic letters incl. superscript alef
    {0x06D5, 0x06DC},  // heh + combining
    {0x06DF, 0x06E8},
    {0x06EA, 0x06FC},  // combining, extended digits
    {0x06FF, 0x06FF},
    {0x0750, 0x077F},  // Arabic Supplement
    {0x08A0, 0x08FF},  // Arabic Extended-A
    {0x1E00, 0x1EFF},  // Latin Extended Additional
    {0xFB50, 0xFDFF},  // Arabic Presentation Forms-A
    {0xFE70, 0xFEFC},  // Arabic Presentation Forms-B
}};

}  // namespace

std::vector<char32_t> decode_utf8(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const unsigned char b0 = static_cast<unsigned char>(text[i]);
    char32_t cp = 0;
    std::size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    if (i + len > n) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    bool valid = true;
    for (std::size_t k = 1; k < len; ++k) {
      const unsigned char bk = static_cast<unsigned char>(text[i + k]);
      if ((bk & 0xC0) != 0x80) {
        valid = false;
        break;
      }
      cp = (cp << 6) | (bk & 0x3F);
    }
    // Overlong encodings and surrogates decode to U+FFFD.
    if (valid) {
      if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
          (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
          (cp >= 0xD800 && cp <= 0xDFFF)) {
        valid = false;
      }
    }
    if (!valid) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
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

std::string encode_utf8(const std::vector<char32_t>& codepoints) {
  std::string out;
  out.reserve(codepoints.size());
  for (char32_t cp : codepoints) append_utf8(out, cp);
  return out;
}

std::size_t codepoint_count(std::string_view text) {
  std::size_t count = 0;
  for (char c : text) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++count;
  }
  return count;
}

bool is_word_codepoint(char32_t cp) {
  auto it = std::upper_bound(
      kWordRanges.begin(), kWordRanges.end(), cp,
      [](char32_t v, const Range& r) { return v < r.lo; });
  if (it == kWordRanges.begin()) return false;
  --it;
  return cp <= it->hi;
}

char32_t fold_codepoint(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 32;
  if (cp == 0x0178) return 0x00FF;  // Y with diaeresis
  if ((cp >= 0x0100 && cp <= 0x0137) || (cp >= 0x014A && cp <= 0x0177)) {
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if ((cp >= 0x0139 && cp <= 0x0148) || (cp >= 0x0179 && cp <= 0x017E)) {
    return (cp % 2 == 1) ? cp + 1 : cp;
  }
  if ((cp >= 0x0391 && cp <= 0x03A1) || (cp >= 0x03A3 && cp <= 0x03AB)) {
    return cp + 32;
  }
  if (cp == 0x03C2) return 0x03C3;  // final sigma
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 32;
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 80;
  return cp;
}

std::string fold(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : decode_utf8(text)) append_utf8(out, fold_codepoint(cp));
  return out;
}

}  // namespace stylofuse::unicode
