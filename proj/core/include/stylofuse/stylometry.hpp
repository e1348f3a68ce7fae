#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "stylofuse/corpus.hpp"

namespace stylofuse {

inline constexpr std::size_t kNumStylometricFeatures = 7;

/// The seven per-document style measurements, in the fixed order used by
/// every matrix/CSV surface: word_count, sentence_count, avg_sentence_length,
/// type_token_ratio, avg_word_length, comma_count, period_count.
struct StylometricVector {
  std::size_t word_count = 0;
  std::size_t sentence_count = 0;
  double avg_sentence_length = 0.0;  // words per sentence; 0 when no words
  double type_token_ratio = 0.0;     // distinct case-folded words / words
  double avg_word_length = 0.0;      // Unicode scalars per word; 0 when no words
  std::size_t comma_count = 0;       // U+002C and U+060C
  std::size_t period_count = 0;      // U+002E

  std::array<double, kNumStylometricFeatures> to_array() const {
    return {static_cast<double>(word_count), static_cast<double>(sentence_count),
            avg_sentence_length, type_token_ratio, avg_word_length,
            static_cast<double>(comma_count), static_cast<double>(period_count)};
  }
};

const std::array<std::string, kNumStylometricFeatures>& stylometric_feature_names();

struct TokenizationResult {
  std::vector<std::string> words;  // maximal runs of letters/digits, no punctuation
  std::size_t sentences = 0;
};

/// Words are maximal runs of word codepoints (see unicode.hpp). A sentence is
/// a maximal segment containing at least one word and terminated by one of
/// {. ! ? U+061F}; a trailing unterminated segment with a word counts once.
TokenizationResult tokenize_words(std::string_view text, Language language);

StylometricVector extract_features(std::string_view text, Language language);

/// Row i holds extract_features(records[i]) in the fixed field order.
Eigen::MatrixXd features_matrix(const DatasetSplit& split);

}  // namespace stylofuse
