#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stylofuse::unicode {

inline constexpr char32_t kReplacement = 0xFFFD;
inline constexpr char32_t kArabicComma = 0x060C;
inline constexpr char32_t kArabicQuestionMark = 0x061F;

/// Decodes UTF-8 to Unicode scalar values. Invalid sequences become U+FFFD
/// (one replacement per offending byte) so feature extraction stays total.
std::vector<char32_t> decode_utf8(std::string_view text);

void append_utf8(std::string& out, char32_t cp);

std::string encode_utf8(const std::vector<char32_t>& codepoints);

/// Number of Unicode scalar values in a UTF-8 string.
std::size_t codepoint_count(std::string_view text);

/// True for characters that belong inside a word token: letters and digits of
/// the supported scripts (Latin, Greek, Cyrillic, Hebrew, Arabic including
/// presentation forms) plus combining marks, which stay attached to their
/// base letter. Everything else separates words.
bool is_word_codepoint(char32_t cp);

/// Simple one-to-one case folding (ASCII, Latin-1/Extended, Greek, Cyrillic).
/// Arabic has no case. Scripts outside the table fold to themselves.
char32_t fold_codepoint(char32_t cp);

/// Case-folds a UTF-8 string codepoint by codepoint.
std::string fold(std::string_view text);

}  // namespace stylofuse::unicode
