#include "stylofuse/fusion_head.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stylofuse/corpus.hpp"
#include "stylofuse/rng.hpp"

namespace stylofuse {

namespace {

// Stable row-wise softmax into probabilities.
Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd probs(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double m = logits.row(i).maxCoeff();
    Eigen::RowVectorXd e = (logits.row(i).array() - m).exp();
    probs.row(i) = e / e.sum();
  }
  return probs;
}

// Fills a matrix row by row from the rng; the fixed order keeps
// initialization bit-identical across platforms for a given seed.
void fill_uniform(Eigen::MatrixXd& m, Rng& rng, double bound) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rng.next_double(-bound, bound);
    }
  }
}

void check_labels(const std::vector<int>& labels, Eigen::Index n,
                  int n_classes) {
  if (static_cast<Eigen::Index>(labels.size()) != n) {
    throw Error(ErrorCode::ShapeMismatch,
                "got " + std::to_string(labels.size()) + " labels for " +
                    std::to_string(n) + " rows");
  }
  for (int y : labels) {
    if (y < 0 || y >= n_classes) {
      throw Error(ErrorCode::InvalidLabel,
                  "class index " + std::to_string(y) + " out of range");
    }
  }
}

}  // namespace

void validate_config(const FusionConfig& config) {
  auto bad = [](const std::string& what) {
    throw Error(ErrorCode::InvalidConfig, what);
  };
  if (config.text_dim < 1) bad("text_dim must be positive");
  if (config.numerical_pathway && config.num_dim < 1) {
    bad("num_dim must be positive");
  }
  if (config.numerical_pathway && config.num_hidden < 1) {
    bad("num_hidden must be positive");
  }
  if (config.text_hidden < 1) bad("text_hidden must be positive");
  if (config.n_classes < 2) bad("n_classes must be at least 2");
  if (!(config.dropout_rate >= 0.0 && config.dropout_rate < 1.0)) {
    bad("dropout_rate must lie in [0, 1)");
  }
  if (!(config.batchnorm_epsilon > 0.0)) bad("batchnorm_epsilon must be positive");
  if (!(config.batchnorm_momentum > 0.0 && config.batchnorm_momentum <= 1.0)) {
    bad("batchnorm_momentum must lie in (0, 1]");
  }
  if (!(config.learning_rate > 0.0)) bad("learning_rate must be positive");
  if (config.batch_size < 1) bad("batch_size must be positive");
  if (config.max_epochs < 1) bad("max_epochs must be positive");
  if (config.early_stopping_patience < 1) {
    bad("early_stopping_patience must be positive");
  }
}

FusionConfig disable_numerical_pathway(FusionConfig config) {
  config.numerical_pathway = false;
  return config;
}

FusionModel init_model(const FusionConfig& config) {
  validate_config(config);
  FusionModel model;
  model.config = config;

  Rng rng(derive_seed(config.seed, "init"));
  const int concat = (config.numerical_pathway ? config.num_hidden : 0) +
                     config.text_hidden;

  if (config.numerical_pathway) {
    model.bn_gamma = Eigen::VectorXd::Ones(config.num_dim);
    model.bn_beta = Eigen::VectorXd::Zero(config.num_dim);
    model.bn_running_mean = Eigen::VectorXd::Zero(config.num_dim);
    model.bn_running_var = Eigen::VectorXd::Ones(config.num_dim);
    model.w_num.resize(config.num_hidden, config.num_dim);
    fill_uniform(model.w_num, rng, std::sqrt(6.0 / config.num_dim));
    model.b_num = Eigen::VectorXd::Zero(config.num_hidden);
  }

  model.w_text.resize(config.text_hidden, config.text_dim);
  fill_uniform(model.w_text, rng, std::sqrt(6.0 / config.text_dim));
  model.b_text = Eigen::VectorXd::Zero(config.text_hidden);

  model.w_out.resize(config.n_classes, concat);
  fill_uniform(model.w_out, rng, std::sqrt(6.0 / concat));
  model.b_out = Eigen::VectorXd::Zero(config.n_classes);
  return model;
}

ForwardResult forward(FusionModel& model, const Eigen::MatrixXd& num_features,
                      const Eigen::MatrixXd& text_embeddings, ForwardMode mode,
                      std::uint64_t dropout_mask_seed) {
  const FusionConfig& cfg = model.config;
  const Eigen::Index n = text_embeddings.rows();
  const bool training = mode == ForwardMode::Train;

  if (text_embeddings.cols() != cfg.text_dim) {
    throw Error(ErrorCode::ShapeMismatch,
                "text embeddings have " + std::to_string(text_embeddings.cols()) +
                    " columns, model expects " + std::to_string(cfg.text_dim));
  }
  if (cfg.numerical_pathway) {
    if (num_features.cols() != cfg.num_dim) {
      throw Error(ErrorCode::ShapeMismatch,
                  "numerical features have " +
                      std::to_string(num_features.cols()) +
                      " columns, model expects " + std::to_string(cfg.num_dim));
    }
    if (num_features.rows() != n) {
      throw Error(ErrorCode::ShapeMismatch,
                  "numerical and text batches disagree: " +
                      std::to_string(num_features.rows()) + " vs " +
                      std::to_string(n) + " rows");
    }
    if (training && n < 2) {
      throw Error(ErrorCode::BatchTooSmall,
                  "batch statistics need at least 2 rows, got " +
                      std::to_string(n));
    }
  }

  ForwardCache cache;
  cache.mode = mode;
  cache.batch = n;

  Eigen::MatrixXd num_out;  // n x num_hidden, empty when pathway disabled
  if (cfg.numerical_pathway) {
    Eigen::MatrixXd xhat(n, cfg.num_dim);
    if (training) {
      Eigen::RowVectorXd mean = num_features.colwise().mean();
      Eigen::MatrixXd centered = num_features.rowwise() - mean;
      // Biased variance normalizes the batch; the unbiased form feeds the
      // running estimate, matching the usual batchnorm convention.
      Eigen::RowVectorXd var_b =
          centered.array().square().colwise().sum() / static_cast<double>(n);
      Eigen::RowVectorXd inv_std =
          (var_b.array() + cfg.batchnorm_epsilon).rsqrt();
      xhat = centered.array().rowwise() * inv_std.array();

      Eigen::RowVectorXd var_u = var_b * (static_cast<double>(n) /
                                          static_cast<double>(n - 1));
      const double m = cfg.batchnorm_momentum;
      model.bn_running_mean =
          (1.0 - m) * model.bn_running_mean + m * mean.transpose();
      model.bn_running_var =
          (1.0 - m) * model.bn_running_var + m * var_u.transpose();

      cache.bn_inv_std = inv_std.transpose();
      cache.bn_xhat = xhat;
    } else {
      Eigen::RowVectorXd inv_std =
          (model.bn_running_var.transpose().array() + cfg.batchnorm_epsilon)
              .rsqrt();
      xhat = (num_features.rowwise() - model.bn_running_mean.transpose())
                 .array()
                 .rowwise() *
             inv_std.array();
    }
    Eigen::MatrixXd bn_out =
        (xhat.array().rowwise() * model.bn_gamma.transpose().array())
            .rowwise() +
        model.bn_beta.transpose().array();

    Eigen::MatrixXd pre =
        (bn_out * model.w_num.transpose()).rowwise() + model.b_num.transpose();
    num_out = pre.cwiseMax(0.0);
    if (training) {
      cache.num_pre = pre;
      cache.num_act = num_out;
      // Re-derive bn_out later from xhat; only xhat is cached.
    }
  }

  Eigen::MatrixXd dropped;
  if (training && cfg.dropout_rate > 0.0) {
    // Inverted scaling: survivors are divided by the keep probability so the
    // expected activation matches inference, where dropout is a no-op.
    Rng rng(dropout_mask_seed);
    const double keep = 1.0 - cfg.dropout_rate;
    Eigen::MatrixXd scale(n, cfg.text_dim);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < cfg.text_dim; ++j) {
        scale(i, j) = rng.next_double() >= cfg.dropout_rate ? 1.0 / keep : 0.0;
      }
    }
    dropped = text_embeddings.cwiseProduct(scale);
    cache.dropout_scale = std::move(scale);
  } else {
    dropped = text_embeddings;
    if (training) cache.dropout_scale = Eigen::MatrixXd::Ones(n, cfg.text_dim);
  }

  Eigen::MatrixXd text_pre =
      (dropped * model.w_text.transpose()).rowwise() + model.b_text.transpose();
  Eigen::MatrixXd text_act = text_pre.cwiseMax(0.0);

  const int num_h = cfg.numerical_pathway ? cfg.num_hidden : 0;
  Eigen::MatrixXd concat(n, num_h + cfg.text_hidden);
  if (num_h > 0) concat.leftCols(num_h) = num_out;
  concat.rightCols(cfg.text_hidden) = text_act;

  Eigen::MatrixXd logits =
      (concat * model.w_out.transpose()).rowwise() + model.b_out.transpose();

  if (training) {
    cache.text_dropped = std::move(dropped);
    cache.text_pre = std::move(text_pre);
    cache.text_act = std::move(text_act);
    cache.logits = logits;
  }

  ForwardResult result;
  result.logits = std::move(logits);
  result.cache = std::move(cache);
  return result;
}

double softmax_cross_entropy(const Eigen::MatrixXd& logits,
                             const std::vector<int>& labels) {
  const Eigen::Index n = logits.rows();
  if (n == 0) throw Error(ErrorCode::EmptyInput, "no logit rows");
  check_labels(labels, n, static_cast<int>(logits.cols()));
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = logits.row(i).maxCoeff();
    const double lse =
        m + std::log((logits.row(i).array() - m).exp().sum());
    total += lse - logits(i, labels[static_cast<std::size_t>(i)]);
  }
  return total / static_cast<double>(n);
}

Gradients backward(const FusionModel& model, const ForwardCache& cache,
                   const std::vector<int>& labels) {
  const FusionConfig& cfg = model.config;
  if (cache.mode != ForwardMode::Train) {
    throw Error(ErrorCode::StaleCache,
                "backward needs a cache from a train-mode forward");
  }
  const Eigen::Index n = cache.batch;
  if (cache.logits.rows() != n || cache.text_pre.cols() != cfg.text_hidden ||
      cache.text_dropped.cols() != cfg.text_dim ||
      (cfg.numerical_pathway && cache.bn_xhat.rows() != n)) {
    throw Error(ErrorCode::StaleCache,
                "cache does not match the model's shapes");
  }
  check_labels(labels, n, cfg.n_classes);

  Gradients g;

  // d mean-CE / d logits = (softmax - onehot) / n
  Eigen::MatrixXd dlogits = softmax_rows(cache.logits);
  for (Eigen::Index i = 0; i < n; ++i) {
    dlogits(i, labels[static_cast<std::size_t>(i)]) -= 1.0;
  }
  dlogits /= static_cast<double>(n);

  const int num_h = cfg.numerical_pathway ? cfg.num_hidden : 0;
  Eigen::MatrixXd concat(n, num_h + cfg.text_hidden);
  if (num_h > 0) concat.leftCols(num_h) = cache.num_act;
  concat.rightCols(cfg.text_hidden) = cache.text_act;

  g.w_out = dlogits.transpose() * concat;
  g.b_out = dlogits.colwise().sum().transpose();
  Eigen::MatrixXd dconcat = dlogits * model.w_out;

  // Text pathway.
  Eigen::MatrixXd dtext_pre =
      dconcat.rightCols(cfg.text_hidden)
          .cwiseProduct((cache.text_pre.array() > 0.0).cast<double>().matrix());
  g.w_text = dtext_pre.transpose() * cache.text_dropped;
  g.b_text = dtext_pre.colwise().sum().transpose();
  g.text_embedding =
      (dtext_pre * model.w_text).cwiseProduct(cache.dropout_scale);

  // Numerical pathway with the full batchnorm backward: gradients reach the
  // inputs through the batch mean and variance as well as the direct path.
  if (cfg.numerical_pathway) {
    Eigen::MatrixXd dnum_pre =
        dconcat.leftCols(num_h).cwiseProduct(
            (cache.num_pre.array() > 0.0).cast<double>().matrix());
    Eigen::MatrixXd bn_out =
        (cache.bn_xhat.array().rowwise() *
         model.bn_gamma.transpose().array())
            .rowwise() +
        model.bn_beta.transpose().array();
    g.w_num = dnum_pre.transpose() * bn_out;
    g.b_num = dnum_pre.colwise().sum().transpose();

    Eigen::MatrixXd dbn_out = dnum_pre * model.w_num;  // n x num_dim
    g.bn_gamma = dbn_out.cwiseProduct(cache.bn_xhat).colwise().sum().transpose();
    g.bn_beta = dbn_out.colwise().sum().transpose();

    Eigen::MatrixXd dxhat =
        dbn_out.array().rowwise() * model.bn_gamma.transpose().array();
    Eigen::RowVectorXd sum_dxhat = dxhat.colwise().sum();
    Eigen::RowVectorXd sum_dxhat_xhat =
        dxhat.cwiseProduct(cache.bn_xhat).colwise().sum();
    const double inv_n = 1.0 / static_cast<double>(n);
    g.num_features =
        ((dxhat * static_cast<double>(n)).rowwise() - sum_dxhat -
         (cache.bn_xhat.array().rowwise() * sum_dxhat_xhat.array()).matrix())
            .array()
            .rowwise() *
        (inv_n * cache.bn_inv_std.transpose().array());
  }

  return g;
}

Prediction predict(const FusionModel& model,
                   const Eigen::VectorXd& num_features,
                   const Eigen::VectorXd& text_embedding) {
  Eigen::MatrixXd num(1, num_features.size());
  num.row(0) = num_features.transpose();
  Eigen::MatrixXd text(1, text_embedding.size());
  text.row(0) = text_embedding.transpose();
  return predict_batch(model, num, text).front();
}

std::vector<Prediction> predict_batch(const FusionModel& model,
                                      const Eigen::MatrixXd& num_features,
                                      const Eigen::MatrixXd& text_embeddings) {
  // Inference never mutates the model; the const_cast only satisfies the
  // shared forward signature whose train branch updates running statistics.
  ForwardResult fwd =
      forward(const_cast<FusionModel&>(model), num_features, text_embeddings,
              ForwardMode::Inference);
  Eigen::MatrixXd probs = softmax_rows(fwd.logits);
  std::vector<Prediction> out(static_cast<std::size_t>(probs.rows()));
  for (Eigen::Index i = 0; i < probs.rows(); ++i) {
    Prediction& p = out[static_cast<std::size_t>(i)];
    p.probabilities = probs.row(i).transpose();
    // Ties break toward human so an exactly uncertain model never accuses.
    p.label = probs(i, kAiClass) > probs(i, kHumanClass) ? kAiClass : kHumanClass;
  }
  return out;
}

}  // namespace stylofuse
