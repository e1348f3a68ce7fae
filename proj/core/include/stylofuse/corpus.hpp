#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stylofuse/errors.hpp"

namespace stylofuse {

enum class Language { Arabic, English };
enum class Label { Ai, Human };
enum class SplitName { Train, Dev, Eval, Test };

// Class index convention used everywhere downstream: ai = 0, human = 1.
inline constexpr int kAiClass = 0;
inline constexpr int kHumanClass = 1;

inline int label_index(Label label) { return label == Label::Ai ? kAiClass : kHumanClass; }

std::string to_string(Language language);
std::string to_string(Label label);
std::string to_string(SplitName name);
std::optional<Language> parse_language(const std::string& text);
std::optional<Label> parse_label(const std::string& text);

/// One labeled essay. `label` is absent for unlabeled test-phase data.
struct EssayRecord {
  std::string id;
  std::string text;
  Language language = Language::English;
  std::optional<Label> label;
  std::optional<std::string> generator;
};

/// Immutable after construction; record order is file order.
struct DatasetSplit {
  SplitName name = SplitName::Train;
  std::vector<EssayRecord> records;

  std::size_t size() const { return records.size(); }
};

struct SplitStats {
  std::size_t total = 0;
  std::size_t ai_count = 0;
  std::size_t human_count = 0;
  std::size_t unlabeled_count = 0;

  bool operator==(const SplitStats&) const = default;
};

/// Loads a JSON-Lines dataset file (keys: id, essay, label?, language,
/// generator?). Rejects schema violations with 1-based line numbers.
/// When `expected_language` is set, every record must match it.
DatasetSplit load_split(const std::filesystem::path& path,
                        std::optional<Language> expected_language = std::nullopt,
                        SplitName name = SplitName::Train);

/// Writes a split as JSON-Lines; load_split(write_split(s)) == s.
void write_split(const DatasetSplit& split, const std::filesystem::path& path);

SplitStats split_stats(const DatasetSplit& split);

/// Deterministic desk-scale stand-in for the restricted shared-task corpus.
/// Emits 2*n_per_class records: "ai-like" texts draw a small per-essay
/// sub-vocabulary, keep sentence lengths uniform and rarely use commas;
/// "human-like" texts draw widely, vary sentence lengths and punctuate more.
/// Both classes share one vocabulary pool so the separation is stylometric,
/// not lexical. Arabic mode emits Arabic script and Arabic punctuation.
DatasetSplit generate_synthetic_corpus(std::uint64_t seed,
                                       std::size_t n_per_class,
                                       Language language);

}  // namespace stylofuse
