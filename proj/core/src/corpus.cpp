#include "stylofuse/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "stylofuse/rng.hpp"
#include "stylofuse/unicode.hpp"

namespace stylofuse {

using nlohmann::json;

std::string to_string(Language language) {
  return language == Language::Arabic ? "arabic" : "english";
}

std::string to_string(Label label) {
  return label == Label::Ai ? "ai" : "human";
}

std::string to_string(SplitName name) {
  switch (name) {
    case SplitName::Train: return "train";
    case SplitName::Dev: return "dev";
    case SplitName::Eval: return "eval";
    case SplitName::Test: return "test";
  }
  return "train";
}

std::optional<Language> parse_language(const std::string& text) {
  if (text == "arabic") return Language::Arabic;
  if (text == "english") return Language::English;
  return std::nullopt;
}

std::optional<Label> parse_label(const std::string& text) {
  if (text == "ai") return Label::Ai;
  if (text == "human") return Label::Human;
  return std::nullopt;
}

namespace {

bool has_non_whitespace(const std::string& text) {
  for (char c : text) {
    if (c != ' ' && c != '\t' && c != '\r' && c != '\n' && c != '\f' &&
        c != '\v') {
      return true;
    }
  }
  return false;
}

std::string at_line(std::size_t line_no) {
  return " at line " + std::to_string(line_no);
}

EssayRecord parse_record(const std::string& line, std::size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedLine,
                std::string("invalid JSON") + at_line(line_no) + ": " + e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::MalformedLine,
                "expected a JSON object" + at_line(line_no));
  }

  EssayRecord record;
  if (!j.contains("id") || !j["id"].is_string() ||
      j["id"].get<std::string>().empty()) {
    throw Error(ErrorCode::MissingField, "\"id\"" + at_line(line_no));
  }
  record.id = j["id"].get<std::string>();

  if (!j.contains("essay") || !j["essay"].is_string()) {
    throw Error(ErrorCode::MissingField, "\"essay\"" + at_line(line_no));
  }
  record.text = j["essay"].get<std::string>();
  if (!has_non_whitespace(record.text)) {
    throw Error(ErrorCode::MissingField,
                "\"essay\" is empty" + at_line(line_no));
  }

  if (!j.contains("language") || !j["language"].is_string()) {
    throw Error(ErrorCode::MissingField, "\"language\"" + at_line(line_no));
  }
  const auto language = parse_language(j["language"].get<std::string>());
  if (!language) {
    throw Error(ErrorCode::MalformedLine,
                "unknown language \"" + j["language"].get<std::string>() +
                    "\"" + at_line(line_no));
  }
  record.language = *language;

  if (j.contains("label") && !j["label"].is_null()) {
    if (!j["label"].is_string()) {
      throw Error(ErrorCode::InvalidLabel,
                  "label must be a string" + at_line(line_no));
    }
    const auto label = parse_label(j["label"].get<std::string>());
    if (!label) {
      throw Error(ErrorCode::InvalidLabel,
                  "\"" + j["label"].get<std::string>() + "\"" + at_line(line_no));
    }
    record.label = *label;
  }

  if (j.contains("generator") && !j["generator"].is_null()) {
    if (!j["generator"].is_string()) {
      throw Error(ErrorCode::MalformedLine,
                  "generator must be a string" + at_line(line_no));
    }
    record.generator = j["generator"].get<std::string>();
  }
  return record;
}

}  // namespace

DatasetSplit load_split(const std::filesystem::path& path,
                        std::optional<Language> expected_language,
                        SplitName name) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }

  DatasetSplit split;
  split.name = name;
  std::string line;
  std::size_t line_no = 0;
  std::unordered_set<std::string> seen_ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    EssayRecord record = parse_record(line, line_no);
    if (!seen_ids.insert(record.id).second) {
      throw Error(ErrorCode::DuplicateId,
                  "\"" + record.id + "\"" + at_line(line_no));
    }
    if (expected_language && record.language != *expected_language) {
      throw Error(ErrorCode::LanguageMismatch,
                  "expected " + to_string(*expected_language) + ", got " +
                      to_string(record.language) + at_line(line_no));
    }
    split.records.push_back(std::move(record));
  }
  return split;
}

void write_split(const DatasetSplit& split, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write " + path.string());
  }
  for (const auto& record : split.records) {
    json j;
    j["id"] = record.id;
    j["essay"] = record.text;
    j["language"] = to_string(record.language);
    if (record.label) j["label"] = to_string(*record.label);
    if (record.generator) j["generator"] = *record.generator;
    out << j.dump() << "\n";
  }
  if (!out) {
    throw Error(ErrorCode::IoError, "failed writing " + path.string());
  }
}

SplitStats split_stats(const DatasetSplit& split) {
  SplitStats stats;
  stats.total = split.records.size();
  for (const auto& record : split.records) {
    if (!record.label) {
      ++stats.unlabeled_count;
    } else if (*record.label == Label::Ai) {
      ++stats.ai_count;
    } else {
      ++stats.human_count;
    }
  }
  return stats;
}

namespace {

constexpr char32_t kArabicLetters[] = {
    0x0627, 0x0628, 0x062A, 0x062B, 0x062C, 0x062D, 0x062E, 0x062F,
    0x0630, 0x0631, 0x0632, 0x0633, 0x0634, 0x0635, 0x0636, 0x0637,
    0x0638, 0x0639, 0x063A, 0x0641, 0x0642, 0x0643, 0x0644, 0x0645,
    0x0646, 0x0647, 0x0648, 0x064A};

std::string make_word(Rng& rng, Language language) {
  std::string word;
  if (language == Language::Arabic) {
    const std::size_t len = 2 + rng.next_below(4);
    for (std::size_t i = 0; i < len; ++i) {
      unicode::append_utf8(
          word, kArabicLetters[rng.next_below(std::size(kArabicLetters))]);
    }
  } else {
    static constexpr const char* kOnsets[] = {"b", "d", "f", "g", "k", "l",
                                              "m", "n", "p", "r", "s", "t",
                                              "v", "th", "st", "pl"};
    static constexpr const char* kVowels[] = {"a", "e", "i", "o", "u", "ai",
                                              "ou"};
    const std::size_t syllables = 2 + rng.next_below(3);
    for (std::size_t i = 0; i < syllables; ++i) {
      word += kOnsets[rng.next_below(std::size(kOnsets))];
      word += kVowels[rng.next_below(std::size(kVowels))];
    }
  }
  return word;
}

std::vector<std::string> make_vocabulary(std::uint64_t seed, Language language,
                                         std::size_t size) {
  Rng rng(seed);
  std::vector<std::string> pool;
  pool.reserve(size);
  while (pool.size() < size) {
    std::string word = make_word(rng, language);
    bool duplicate = false;
    for (const auto& existing : pool) {
      if (existing == word) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) pool.push_back(std::move(word));
  }
  return pool;
}

std::string capitalize(const std::string& word) {
  if (word.empty() || word[0] < 'a' || word[0] > 'z') return word;
  std::string out = word;
  out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

struct StyleProfile {
  std::size_t min_sentences;
  std::size_t max_sentences;
  std::size_t min_sentence_words;
  std::size_t max_sentence_words;
  double comma_rate;
  double question_rate;
  bool per_essay_subvocab;
  std::size_t subvocab_size;
};

// The ai profile keeps sentence length constant and recycles a small
// sub-vocabulary; the human profile varies both. Both sample from one shared
// pool, so lexical content overlaps and the stylometric gap carries the signal.
constexpr StyleProfile kAiProfile = {6, 9, 12, 12, 0.02, 0.0, true, 25};
constexpr StyleProfile kHumanProfile = {5, 9, 4, 18, 0.22, 0.12, false, 0};

std::string compose_essay(Rng& rng, const std::vector<std::string>& pool,
                          const StyleProfile& profile, Language language) {
  std::vector<std::size_t> subvocab;
  if (profile.per_essay_subvocab) {
    for (std::size_t i = 0; i < profile.subvocab_size; ++i) {
      subvocab.push_back(rng.next_below(pool.size()));
    }
  }
  auto pick_word = [&]() -> const std::string& {
    if (profile.per_essay_subvocab) {
      return pool[subvocab[rng.next_below(subvocab.size())]];
    }
    return pool[rng.next_below(pool.size())];
  };

  const std::size_t n_sentences =
      profile.min_sentences +
      rng.next_below(profile.max_sentences - profile.min_sentences + 1);
  std::string essay;
  for (std::size_t s = 0; s < n_sentences; ++s) {
    const std::size_t span =
        profile.max_sentence_words - profile.min_sentence_words + 1;
    const std::size_t n_words = profile.min_sentence_words +
                                (span > 1 ? rng.next_below(span) : 0);
    for (std::size_t w = 0; w < n_words; ++w) {
      std::string word = pick_word();
      if (language == Language::English && w == 0) word = capitalize(word);
      essay += word;
      const bool last = (w + 1 == n_words);
      if (!last && rng.next_double() < profile.comma_rate) {
        unicode::append_utf8(essay, language == Language::Arabic
                                        ? unicode::kArabicComma
                                        : U',');
      }
      essay += last ? "" : " ";
    }
    if (rng.next_double() < profile.question_rate) {
      unicode::append_utf8(essay, language == Language::Arabic
                                      ? unicode::kArabicQuestionMark
                                      : U'?');
    } else {
      essay += '.';
    }
    if (s + 1 < n_sentences) essay += ' ';
  }
  return essay;
}

}  // namespace

DatasetSplit generate_synthetic_corpus(std::uint64_t seed,
                                       std::size_t n_per_class,
                                       Language language) {
  if (n_per_class < 1) {
    throw Error(ErrorCode::InvalidCount, "n_per_class must be >= 1");
  }

  const auto pool = make_vocabulary(derive_seed(seed, "vocab"), language, 400);
  const std::string prefix = language == Language::Arabic ? "ar" : "en";

  DatasetSplit split;
  split.records.reserve(2 * n_per_class);

  Rng ai_rng(derive_seed(seed, "ai"));
  for (std::size_t i = 0; i < n_per_class; ++i) {
    EssayRecord record;
    std::ostringstream id;
    id << prefix << "-ai-" << i + 1;
    record.id = id.str();
    record.language = language;
    record.label = Label::Ai;
    record.generator = "synthgen";
    record.text = compose_essay(ai_rng, pool, kAiProfile, language);
    split.records.push_back(std::move(record));
  }

  Rng human_rng(derive_seed(seed, "human"));
  for (std::size_t i = 0; i < n_per_class; ++i) {
    EssayRecord record;
    std::ostringstream id;
    id << prefix << "-hum-" << i + 1;
    record.id = id.str();
    record.language = language;
    record.label = Label::Human;
    record.text = compose_essay(human_rng, pool, kHumanProfile, language);
    split.records.push_back(std::move(record));
  }
  return split;
}

}  // namespace stylofuse
