#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "stylofuse/corpus.hpp"
#include "stylofuse/errors.hpp"

namespace stylofuse {

/// One nonzero component of a document vector; kept sorted by index.
struct SparseEntry {
  std::uint32_t index = 0;
  double value = 0.0;
};

using SparseVector = std::vector<SparseEntry>;

inline constexpr std::size_t kTfIdfMaxFeatures = 10000;

/// Case-folded unigram vocabulary with smoothed idf weights. Term indices
/// follow lexicographic order of the kept terms.
struct TfIdfModel {
  std::map<std::string, std::uint32_t> vocabulary;
  std::vector<double> idf;  // indexed by term index
  Language language = Language::English;
};

/// Builds the vocabulary and idf table from raw document texts. When more
/// than max_features distinct terms occur, the most document-frequent ones
/// are kept (ties the lexicographically smaller term). idf uses the smoothed
/// form ln((1 + N) / (1 + df)) + 1. Throws EmptyCorpus.
TfIdfModel fit_tfidf(const std::vector<std::string>& documents,
                     Language language,
                     std::size_t max_features = kTfIdfMaxFeatures);

/// Term counts weighted by idf, then L2-normalized per document. Documents
/// with no in-vocabulary term map to the empty vector.
SparseVector transform_tfidf(const TfIdfModel& model, const std::string& text);

std::vector<SparseVector> transform_tfidf(const TfIdfModel& model,
                                          const std::vector<std::string>& texts);

/// Linear SVM in the -1 (ai) / +1 (human) label convention.
struct LinearSvmModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
  double lambda = 1e-4;
};

inline constexpr int kSvmAi = -1;
inline constexpr int kSvmHuman = +1;

int svm_label_from_class(int class_index);  // 0 -> -1, 1 -> +1
int class_from_svm_label(int svm_label);

/// Pegasos stochastic subgradient training: learning rate 1/(lambda * t),
/// unregularized bias, and the returned weights are the average of the
/// per-step iterates. Deterministic for a fixed seed. Throws EmptyData when
/// no samples are given and SingleClass when only one label occurs.
LinearSvmModel train_svm(const std::vector<SparseVector>& x,
                         const std::vector<int>& y, Eigen::Index dimension,
                         double lambda = 1e-4, int epochs = 100,
                         std::uint64_t seed = 0);

double svm_decision(const LinearSvmModel& model, const SparseVector& x);

/// sign(w.x + b); an exact zero goes to +1 (human).
int predict_svm(const LinearSvmModel& model, const SparseVector& x);

/// Regularized hinge objective lambda/2 |w|^2 + mean hinge loss; used by
/// tests to confirm training actually descends.
double svm_objective(const LinearSvmModel& model,
                     const std::vector<SparseVector>& x,
                     const std::vector<int>& y);

/// TF-IDF vocabulary + SVM persisted together in one container file.
struct BaselineModel {
  TfIdfModel tfidf;
  LinearSvmModel svm;
};

void save_baseline(const BaselineModel& model,
                   const std::filesystem::path& path);
BaselineModel load_baseline(const std::filesystem::path& path);

}  // namespace stylofuse
