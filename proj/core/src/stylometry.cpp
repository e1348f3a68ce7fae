#include "stylofuse/stylometry.hpp"

#include <unordered_set>

#include "stylofuse/unicode.hpp"

namespace stylofuse {

namespace {

bool is_sentence_terminator(char32_t cp) {
  return cp == U'.' || cp == U'!' || cp == U'?' ||
         cp == unicode::kArabicQuestionMark;
}

TokenizationResult tokenize_codepoints(const std::vector<char32_t>& cps) {
  TokenizationResult result;
  std::string current;
  bool segment_has_word = false;
  for (char32_t cp : cps) {
    if (unicode::is_word_codepoint(cp)) {
      unicode::append_utf8(current, cp);
      continue;
    }
    if (!current.empty()) {
      result.words.push_back(std::move(current));
      current.clear();
      segment_has_word = true;
    }
    if (is_sentence_terminator(cp) && segment_has_word) {
      ++result.sentences;
      segment_has_word = false;
    }
  }
  if (!current.empty()) {
    result.words.push_back(std::move(current));
    segment_has_word = true;
  }
  // Trailing unterminated segment with at least one word counts as a sentence.
  if (segment_has_word) ++result.sentences;
  return result;
}

}  // namespace

const std::array<std::string, kNumStylometricFeatures>& stylometric_feature_names() {
  static const std::array<std::string, kNumStylometricFeatures> kNames = {
      "word_count",        "sentence_count", "avg_sentence_length",
      "type_token_ratio",  "avg_word_length", "comma_count",
      "period_count"};
  return kNames;
}

TokenizationResult tokenize_words(std::string_view text,
                                  Language /*language*/) {
  return tokenize_codepoints(unicode::decode_utf8(text));
}

StylometricVector extract_features(std::string_view text, Language language) {
  const auto cps = unicode::decode_utf8(text);
  TokenizationResult tok = tokenize_codepoints(cps);
  (void)language;

  StylometricVector features;
  features.word_count = tok.words.size();
  features.sentence_count = tok.sentences;

  if (features.word_count > 0) {
    if (features.sentence_count > 0) {
      features.avg_sentence_length =
          static_cast<double>(features.word_count) /
          static_cast<double>(features.sentence_count);
    }
    std::unordered_set<std::string> types;
    std::size_t total_scalars = 0;
    for (const auto& word : tok.words) {
      types.insert(unicode::fold(word));
      total_scalars += unicode::codepoint_count(word);
    }
    features.type_token_ratio = static_cast<double>(types.size()) /
                                static_cast<double>(features.word_count);
    features.avg_word_length = static_cast<double>(total_scalars) /
                               static_cast<double>(features.word_count);
  }

  for (char32_t cp : cps) {
    if (cp == U',' || cp == unicode::kArabicComma) ++features.comma_count;
    if (cp == U'.') ++features.period_count;
  }
  return features;
}

Eigen::MatrixXd features_matrix(const DatasetSplit& split) {
  Eigen::MatrixXd matrix(static_cast<Eigen::Index>(split.records.size()),
                         static_cast<Eigen::Index>(kNumStylometricFeatures));
  for (std::size_t i = 0; i < split.records.size(); ++i) {
    const auto row =
        extract_features(split.records[i].text, split.records[i].language)
            .to_array();
    for (std::size_t j = 0; j < kNumStylometricFeatures; ++j) {
      matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          row[j];
    }
  }
  return matrix;
}

}  // namespace stylofuse
