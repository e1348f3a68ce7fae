#include "stylofuse/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stylofuse/rng.hpp"
#include "stylofuse/serialize.hpp"
#include "stylofuse/stylometry.hpp"
#include "stylofuse/unicode.hpp"

namespace stylofuse {

namespace {

constexpr const char* kBaselineKind = "stylofuse.baseline";

std::vector<std::string> folded_unigrams(const std::string& text,
                                         Language language) {
  return tokenize_words(unicode::fold(text), language).words;
}

double sparse_dot(const Eigen::VectorXd& w, const SparseVector& x) {
  double acc = 0.0;
  for (const SparseEntry& e : x) {
    acc += w(static_cast<Eigen::Index>(e.index)) * e.value;
  }
  return acc;
}

}  // namespace

TfIdfModel fit_tfidf(const std::vector<std::string>& documents,
                     Language language, std::size_t max_features) {
  if (documents.empty()) {
    throw Error(ErrorCode::EmptyCorpus, "no documents to fit on");
  }

  // Document frequency per distinct folded unigram; std::map keeps the terms
  // in lexicographic order throughout.
  std::map<std::string, std::size_t> df;
  for (const std::string& doc : documents) {
    std::vector<std::string> words = folded_unigrams(doc, language);
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    for (std::string& w : words) df[std::move(w)] += 1;
  }

  std::vector<const std::pair<const std::string, std::size_t>*> kept;
  kept.reserve(df.size());
  for (const auto& item : df) kept.push_back(&item);
  if (kept.size() > max_features) {
    // Highest-df terms survive the cap; on equal df the lexicographically
    // smaller term wins, which stable sort over the sorted map provides.
    std::stable_sort(kept.begin(), kept.end(),
                     [](const auto* a, const auto* b) {
                       return a->second > b->second;
                     });
    kept.resize(max_features);
    std::sort(kept.begin(), kept.end(), [](const auto* a, const auto* b) {
      return a->first < b->first;
    });
  }

  TfIdfModel model;
  model.language = language;
  const double n = static_cast<double>(documents.size());
  model.idf.reserve(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    model.vocabulary.emplace(kept[i]->first, static_cast<std::uint32_t>(i));
    model.idf.push_back(
        std::log((1.0 + n) / (1.0 + static_cast<double>(kept[i]->second))) +
        1.0);
  }
  return model;
}

SparseVector transform_tfidf(const TfIdfModel& model, const std::string& text) {
  std::map<std::uint32_t, double> counts;
  for (const std::string& w : folded_unigrams(text, model.language)) {
    auto it = model.vocabulary.find(w);
    if (it != model.vocabulary.end()) counts[it->second] += 1.0;
  }

  SparseVector out;
  out.reserve(counts.size());
  double norm_sq = 0.0;
  for (const auto& [index, count] : counts) {
    const double v = count * model.idf[index];
    out.push_back({index, v});
    norm_sq += v * v;
  }
  if (norm_sq > 0.0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (SparseEntry& e : out) e.value *= inv;
  }
  return out;
}

std::vector<SparseVector> transform_tfidf(const TfIdfModel& model,
                                          const std::vector<std::string>& texts) {
  std::vector<SparseVector> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) out.push_back(transform_tfidf(model, t));
  return out;
}

int svm_label_from_class(int class_index) {
  if (class_index == kAiClass) return kSvmAi;
  if (class_index == kHumanClass) return kSvmHuman;
  throw Error(ErrorCode::InvalidLabel,
              "class index " + std::to_string(class_index));
}

int class_from_svm_label(int svm_label) {
  if (svm_label == kSvmAi) return kAiClass;
  if (svm_label == kSvmHuman) return kHumanClass;
  throw Error(ErrorCode::InvalidLabel, "svm label " + std::to_string(svm_label));
}

LinearSvmModel train_svm(const std::vector<SparseVector>& x,
                         const std::vector<int>& y, Eigen::Index dimension,
                         double lambda, int epochs, std::uint64_t seed) {
  if (x.empty()) throw Error(ErrorCode::EmptyData, "no training samples");
  if (x.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(x.size()) + " samples vs " +
                    std::to_string(y.size()) + " labels");
  }
  if (dimension < 1) {
    throw Error(ErrorCode::InvalidConfig, "dimension must be positive");
  }
  if (!(lambda > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "lambda must be positive");
  }
  if (epochs < 1) {
    throw Error(ErrorCode::InvalidConfig, "epochs must be positive");
  }
  bool saw_ai = false;
  bool saw_human = false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == kSvmAi) {
      saw_ai = true;
    } else if (y[i] == kSvmHuman) {
      saw_human = true;
    } else {
      throw Error(ErrorCode::InvalidLabel,
                  "label " + std::to_string(y[i]) + " at position " +
                      std::to_string(i) + ", expected -1 or +1");
    }
    for (const SparseEntry& e : x[i]) {
      if (static_cast<Eigen::Index>(e.index) >= dimension) {
        throw Error(ErrorCode::DimensionMismatch,
                    "feature index " + std::to_string(e.index) +
                        " outside dimension " + std::to_string(dimension));
      }
    }
  }
  if (!saw_ai || !saw_human) {
    throw Error(ErrorCode::SingleClass,
                "training data contains only one label");
  }

  Eigen::VectorXd w = Eigen::VectorXd::Zero(dimension);
  Eigen::VectorXd w_sum = Eigen::VectorXd::Zero(dimension);
  double b = 0.0;
  double b_sum = 0.0;

  Rng rng(derive_seed(seed, "svm-shuffle"));
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  // Pegasos: eta_t = 1/(lambda t); the weight decay implements the L2 term,
  // the bias stays unregularized, and we return the averaged iterates.
  std::uint64_t t = 1;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t i : order) {
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const double yi = static_cast<double>(y[i]);
      const double margin = yi * (sparse_dot(w, x[i]) + b);
      w *= (1.0 - eta * lambda);
      if (margin < 1.0) {
        for (const SparseEntry& e : x[i]) {
          w(static_cast<Eigen::Index>(e.index)) += eta * yi * e.value;
        }
        b += eta * yi;
      }
      w_sum += w;
      b_sum += b;
      ++t;
    }
  }

  const double steps = static_cast<double>(t - 1);
  LinearSvmModel model;
  model.weights = w_sum / steps;
  model.bias = b_sum / steps;
  model.lambda = lambda;
  return model;
}

double svm_decision(const LinearSvmModel& model, const SparseVector& x) {
  return sparse_dot(model.weights, x) + model.bias;
}

int predict_svm(const LinearSvmModel& model, const SparseVector& x) {
  return svm_decision(model, x) >= 0.0 ? kSvmHuman : kSvmAi;
}

double svm_objective(const LinearSvmModel& model,
                     const std::vector<SparseVector>& x,
                     const std::vector<int>& y) {
  if (x.empty() || x.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, "objective needs matching samples");
  }
  double hinge = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    hinge += std::max(0.0, 1.0 - static_cast<double>(y[i]) *
                                     svm_decision(model, x[i]));
  }
  return 0.5 * model.lambda * model.weights.squaredNorm() +
         hinge / static_cast<double>(x.size());
}

void save_baseline(const BaselineModel& model,
                   const std::filesystem::path& path) {
  Container out(kBaselineKind);
  out.put_string("language", to_string(model.tfidf.language));

  std::vector<std::string> terms(model.tfidf.vocabulary.size());
  for (const auto& [term, index] : model.tfidf.vocabulary) {
    terms[index] = term;
  }
  out.put_strings("tfidf.terms", std::move(terms));
  out.put_vector("tfidf.idf",
                 Eigen::Map<const Eigen::VectorXd>(
                     model.tfidf.idf.data(),
                     static_cast<Eigen::Index>(model.tfidf.idf.size())));
  out.put_vector("svm.weights", model.svm.weights);
  out.put_real("svm.bias", model.svm.bias);
  out.put_real("svm.lambda", model.svm.lambda);
  out.save(path);
}

BaselineModel load_baseline(const std::filesystem::path& path) {
  const Container in = Container::load(path, kBaselineKind);

  BaselineModel model;
  const std::optional<Language> lang = parse_language(in.get_string("language"));
  if (!lang) {
    throw Error(ErrorCode::MalformedFile,
                "unknown language '" + in.get_string("language") + "'");
  }
  model.tfidf.language = *lang;
  const std::vector<std::string>& terms = in.get_strings("tfidf.terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    model.tfidf.vocabulary.emplace(terms[i], static_cast<std::uint32_t>(i));
  }
  Eigen::VectorXd idf = in.get_vector("tfidf.idf");
  model.tfidf.idf.assign(idf.data(), idf.data() + idf.size());
  model.svm.weights = in.get_vector("svm.weights");
  model.svm.bias = in.get_real("svm.bias");
  model.svm.lambda = in.get_real("svm.lambda");

  if (model.tfidf.idf.size() != model.tfidf.vocabulary.size() ||
      model.svm.weights.size() !=
          static_cast<Eigen::Index>(model.tfidf.vocabulary.size())) {
    throw Error(ErrorCode::MalformedFile,
                "vocabulary, idf and weight sizes disagree");
  }
  return model;
}

}  // namespace stylofuse
