#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "stylofuse/errors.hpp"

namespace stylofuse {

/// Hyperparameters of the fusion classifier. Defaults: hidden sizes, dropout,
/// Adam settings and batch size are desk-scale choices recorded here; epoch
/// budget 10 with early-stopping patience 2.
struct FusionConfig {
  int text_dim = 256;
  int num_dim = 7;
  int text_hidden = 64;
  int num_hidden = 16;
  int n_classes = 2;
  bool numerical_pathway = true;
  double dropout_rate = 0.1;
  double batchnorm_epsilon = 1e-5;
  double batchnorm_momentum = 0.1;
  double learning_rate = 1e-3;
  int batch_size = 32;
  int max_epochs = 10;
  int early_stopping_patience = 2;
  std::uint64_t seed = 0;
};

void validate_config(const FusionConfig& config);  // throws InvalidConfig

/// Returns a config whose model omits the numerical pathway entirely; the
/// output layer then sees only the text hidden units.
FusionConfig disable_numerical_pathway(FusionConfig config);

/// All learned parameters plus batchnorm running statistics. Numerical-pathway
/// tensors are empty (size 0) when the pathway is disabled.
///
/// Layout: the numerical path is batchnorm -> linear -> ReLU, the text path is
/// dropout -> linear -> ReLU; their activations concatenate [num ‖ text] into
/// the output linear layer producing one logit per class (ai = 0, human = 1).
struct FusionModel {
  FusionConfig config;

  Eigen::VectorXd bn_gamma;         // num_dim
  Eigen::VectorXd bn_beta;          // num_dim
  Eigen::VectorXd bn_running_mean;  // num_dim
  Eigen::VectorXd bn_running_var;   // num_dim

  Eigen::MatrixXd w_num;  // num_hidden x num_dim
  Eigen::VectorXd b_num;  // num_hidden
  Eigen::MatrixXd w_text;  // text_hidden x text_dim
  Eigen::VectorXd b_text;  // text_hidden
  Eigen::MatrixXd w_out;  // n_classes x (num_hidden + text_hidden)
  Eigen::VectorXd b_out;  // n_classes
};

enum class ForwardMode { Train, Inference };

/// Intermediates captured by a train-mode forward, consumed by backward().
struct ForwardCache {
  ForwardMode mode = ForwardMode::Inference;
  Eigen::Index batch = 0;

  Eigen::VectorXd bn_inv_std;       // 1/sqrt(batch_var + eps), per feature
  Eigen::MatrixXd bn_xhat;          // n x num_dim, normalized pre gamma/beta
  Eigen::MatrixXd num_pre;          // n x num_hidden
  Eigen::MatrixXd num_act;          // n x num_hidden
  Eigen::MatrixXd dropout_scale;    // n x text_dim; dropped = input ⊙ scale
  Eigen::MatrixXd text_dropped;     // n x text_dim
  Eigen::MatrixXd text_pre;         // n x text_hidden
  Eigen::MatrixXd text_act;         // n x text_hidden
  Eigen::MatrixXd logits;           // n x n_classes
};

struct ForwardResult {
  Eigen::MatrixXd logits;
  ForwardCache cache;
};

/// Parameter gradients plus input gradients; the batchnorm input gradient
/// flows through the batch statistics (full batchnorm backward).
struct Gradients {
  Eigen::VectorXd bn_gamma;
  Eigen::VectorXd bn_beta;
  Eigen::MatrixXd w_num;
  Eigen::VectorXd b_num;
  Eigen::MatrixXd w_text;
  Eigen::VectorXd b_text;
  Eigen::MatrixXd w_out;
  Eigen::VectorXd b_out;
  Eigen::MatrixXd num_features;    // d loss / d numerical input
  Eigen::MatrixXd text_embedding;  // d loss / d text input
};

struct TrainHistory {
  std::vector<double> train_loss;  // one entry per completed epoch
  std::vector<double> val_loss;
  int stopped_epoch = 0;  // 1-based, <= max_epochs
  int best_epoch = 0;     // 1-based epoch whose parameters were returned
};

/// Labeled training matrices: row i of both matrices belongs to labels[i],
/// labels use the ai=0 / human=1 convention.
struct LabeledBatch {
  Eigen::MatrixXd num_features;     // n x num_dim
  Eigen::MatrixXd text_embeddings;  // n x text_dim
  std::vector<int> labels;
};

/// He-uniform weights (bound sqrt(6/fan_in)), zero biases, identity batchnorm.
/// Bit-deterministic for a fixed config.seed.
FusionModel init_model(const FusionConfig& config);

/// Train mode uses batch statistics (batch >= 2 when the numerical pathway
/// exists), updates running statistics by EMA with batchnorm_momentum, and
/// applies inverted-scaling dropout from dropout_mask_seed. Inference mode
/// uses running statistics and disables dropout.
ForwardResult forward(FusionModel& model, const Eigen::MatrixXd& num_features,
                      const Eigen::MatrixXd& text_embeddings, ForwardMode mode,
                      std::uint64_t dropout_mask_seed = 0);

/// Mean softmax cross-entropy of logits against labels.
double softmax_cross_entropy(const Eigen::MatrixXd& logits,
                             const std::vector<int>& labels);

/// Analytic gradients of the mean cross-entropy for every parameter tensor.
/// Requires a cache produced by a train-mode forward on the same batch.
Gradients backward(const FusionModel& model, const ForwardCache& cache,
                   const std::vector<int>& labels);

/// Validation-loss hook; the trainer calls it after every epoch.
using ValidationLossFn = std::function<double(FusionModel&)>;

/// Mini-batch Adam (beta1 0.9, beta2 0.999, eps 1e-8) with per-epoch shuffles
/// derived from config.seed. Stops when validation loss fails to improve
/// strictly for early_stopping_patience consecutive epochs and returns the
/// parameters of the best-validation epoch.
std::pair<FusionModel, TrainHistory> train(FusionModel model,
                                           const LabeledBatch& train_data,
                                           const LabeledBatch& val_data);

/// Same training loop with an injected validation-loss function.
std::pair<FusionModel, TrainHistory> train(FusionModel model,
                                           const LabeledBatch& train_data,
                                           const ValidationLossFn& val_loss);

struct Prediction {
  int label = 0;                    // ai = 0, human = 1
  Eigen::Vector2d probabilities;    // [p_ai, p_human]
};

/// Inference-mode forward + softmax; argmax ties break toward human.
Prediction predict(const FusionModel& model,
                   const Eigen::VectorXd& num_features,
                   const Eigen::VectorXd& text_embedding);

std::vector<Prediction> predict_batch(const FusionModel& model,
                                      const Eigen::MatrixXd& num_features,
                                      const Eigen::MatrixXd& text_embeddings);

/// Versioned binary container; round-trips bit-exactly.
void save_model(const FusionModel& model, const std::filesystem::path& path);
FusionModel load_model(const std::filesystem::path& path);

}  // namespace stylofuse
