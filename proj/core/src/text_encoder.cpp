#include "stylofuse/text_encoder.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "stylofuse/errors.hpp"
#include "stylofuse/rng.hpp"
#include "stylofuse/stylometry.hpp"
#include "stylofuse/unicode.hpp"

namespace stylofuse {

using nlohmann::json;

std::string to_string(EncoderKind kind) {
  return kind == EncoderKind::HashedNgram ? "hashed" : "precomputed";
}

std::optional<EncoderKind> parse_encoder_kind(const std::string& text) {
  if (text == "hashed" || text == "hashed_ngram") return EncoderKind::HashedNgram;
  if (text == "precomputed") return EncoderKind::Precomputed;
  return std::nullopt;
}

EmbeddingVector encode(std::string_view text, const EncoderConfig& config) {
  if (config.kind != EncoderKind::HashedNgram) {
    throw Error(ErrorCode::InvalidConfig,
                "encode requires a hashed_ngram encoder");
  }
  if (config.dimension < 1) {
    throw Error(ErrorCode::InvalidConfig, "encoder dimension must be >= 1");
  }
  if (config.ngram_orders.empty()) {
    throw Error(ErrorCode::InvalidConfig, "ngram_orders must be nonempty");
  }

  const std::uint64_t index_seed = derive_seed(config.hash_seed, "index");
  const std::uint64_t sign_seed = derive_seed(config.hash_seed, "sign");
  const auto dim = static_cast<std::uint64_t>(config.dimension);

  std::vector<std::string> words;
  for (auto& word : tokenize_words(text, Language::English).words) {
    words.push_back(unicode::fold(word));
  }

  EmbeddingVector vec = EmbeddingVector::Zero(config.dimension);
  for (int order : config.ngram_orders) {
    if (order < 1) continue;
    const auto n = static_cast<std::size_t>(order);
    if (words.size() < n) continue;
    for (std::size_t i = 0; i + n <= words.size(); ++i) {
      std::string gram = words[i];
      for (std::size_t k = 1; k < n; ++k) {
        gram += '\x1f';
        gram += words[i + k];
      }
      const auto index =
          static_cast<Eigen::Index>(fnv1a64(gram, index_seed) % dim);
      const double sign = (fnv1a64(gram, sign_seed) & 1ull) ? 1.0 : -1.0;
      vec(index) += sign;
    }
  }

  const double norm = vec.norm();
  if (norm > 0.0) vec /= norm;
  return vec;
}

Eigen::MatrixXd encode_batch(const DatasetSplit& split,
                             const EncoderConfig& config) {
  Eigen::MatrixXd matrix(static_cast<Eigen::Index>(split.records.size()),
                         config.dimension);
  for (std::size_t i = 0; i < split.records.size(); ++i) {
    matrix.row(static_cast<Eigen::Index>(i)) =
        encode(split.records[i].text, config).transpose();
  }
  return matrix;
}

std::unordered_map<std::string, EmbeddingVector> load_precomputed(
    const std::filesystem::path& embedding_file, const DatasetSplit& split,
    const EncoderConfig& config) {
  if (config.kind != EncoderKind::Precomputed) {
    throw Error(ErrorCode::InvalidConfig,
                "load_precomputed requires a precomputed encoder");
  }
  std::ifstream in(embedding_file);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + embedding_file.string());
  }

  std::unordered_map<std::string, EmbeddingVector> embeddings;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::MalformedFile,
                  "invalid JSON at line " + std::to_string(line_no) + ": " +
                      e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() ||
        !j.contains("embedding") || !j["embedding"].is_array()) {
      throw Error(ErrorCode::MalformedFile,
                  "expected {\"id\", \"embedding\"} at line " +
                      std::to_string(line_no));
    }
    const auto& arr = j["embedding"];
    if (static_cast<int>(arr.size()) != config.dimension) {
      throw Error(ErrorCode::DimensionMismatch,
                  "id \"" + j["id"].get<std::string>() + "\" has length " +
                      std::to_string(arr.size()) + ", expected " +
                      std::to_string(config.dimension));
    }
    EmbeddingVector vec(config.dimension);
    for (std::size_t k = 0; k < arr.size(); ++k) {
      if (!arr[k].is_number()) {
        throw Error(ErrorCode::MalformedFile,
                    "non-numeric embedding entry at line " +
                        std::to_string(line_no));
      }
      vec(static_cast<Eigen::Index>(k)) = arr[k].get<double>();
    }
    embeddings[j["id"].get<std::string>()] = std::move(vec);
  }

  for (const auto& record : split.records) {
    if (!embeddings.count(record.id)) {
      throw Error(ErrorCode::MissingEmbedding,
                  "no embedding for id \"" + record.id + "\"");
    }
  }
  return embeddings;
}

Eigen::MatrixXd embeddings_matrix(
    const DatasetSplit& split,
    const std::unordered_map<std::string, EmbeddingVector>& embeddings) {
  Eigen::Index dim = 0;
  if (!embeddings.empty()) dim = embeddings.begin()->second.size();
  Eigen::MatrixXd matrix(static_cast<Eigen::Index>(split.records.size()), dim);
  for (std::size_t i = 0; i < split.records.size(); ++i) {
    auto it = embeddings.find(split.records[i].id);
    if (it == embeddings.end()) {
      throw Error(ErrorCode::MissingEmbedding,
                  "no embedding for id \"" + split.records[i].id + "\"");
    }
    matrix.row(static_cast<Eigen::Index>(i)) = it->second.transpose();
  }
  return matrix;
}

}  // namespace stylofuse
