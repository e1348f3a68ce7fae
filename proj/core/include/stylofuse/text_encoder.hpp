#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "stylofuse/corpus.hpp"

namespace stylofuse {

/// Document representation fed to the text pathway of the fusion head.
using EmbeddingVector = Eigen::VectorXd;

enum class EncoderKind { HashedNgram, Precomputed };

struct EncoderConfig {
  EncoderKind kind = EncoderKind::HashedNgram;
  int dimension = 256;
  std::vector<int> ngram_orders = {1, 2};  // hashed_ngram only
  std::uint64_t hash_seed = 0x7461636f;
  std::optional<std::filesystem::path> embedding_file;  // precomputed only
};

std::string to_string(EncoderKind kind);
std::optional<EncoderKind> parse_encoder_kind(const std::string& text);

/// Sign-hash feature hashing over case-folded word n-grams, L2-normalized.
/// Deterministic for a fixed config; the zero vector stays zero.
EmbeddingVector encode(std::string_view text, const EncoderConfig& config);

/// One row per record, in record order.
Eigen::MatrixXd encode_batch(const DatasetSplit& split,
                             const EncoderConfig& config);

/// Reads a JSON-Lines file of {"id": ..., "embedding": [...]} produced by an
/// external transformer toolchain. Every record id in `split` must be present
/// and every vector must have length config.dimension.
std::unordered_map<std::string, EmbeddingVector> load_precomputed(
    const std::filesystem::path& embedding_file, const DatasetSplit& split,
    const EncoderConfig& config);

/// Stacks per-id embeddings into an n x D matrix in record order.
Eigen::MatrixXd embeddings_matrix(
    const DatasetSplit& split,
    const std::unordered_map<std::string, EmbeddingVector>& embeddings);

}  // namespace stylofuse
