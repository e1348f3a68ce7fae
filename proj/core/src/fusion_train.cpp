#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "stylofuse/fusion_head.hpp"
#include "stylofuse/rng.hpp"

namespace stylofuse {

namespace {

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEpsilon = 1e-8;

template <typename T>
void adam_update(T& param, const T& grad, T& m, T& v, double lr, int t) {
  if (param.size() == 0) return;
  m = kAdamBeta1 * m + (1.0 - kAdamBeta1) * grad;
  v = (kAdamBeta2 * v.array() + (1.0 - kAdamBeta2) * grad.array().square())
          .matrix();
  const double m_corr = 1.0 - std::pow(kAdamBeta1, t);
  const double v_corr = 1.0 - std::pow(kAdamBeta2, t);
  param.array() -=
      lr * (m.array() / m_corr) / ((v.array() / v_corr).sqrt() + kAdamEpsilon);
}

// Zero tensors with the same shapes as the model's; holds Adam moments.
FusionModel zeros_like(const FusionModel& src) {
  FusionModel z = src;
  z.bn_gamma.setZero();
  z.bn_beta.setZero();
  z.bn_running_mean.setZero();
  z.bn_running_var.setZero();
  z.w_num.setZero();
  z.b_num.setZero();
  z.w_text.setZero();
  z.b_text.setZero();
  z.w_out.setZero();
  z.b_out.setZero();
  return z;
}

void check_batch(const LabeledBatch& data, const FusionConfig& cfg,
                 const char* which) {
  const Eigen::Index n = data.text_embeddings.rows();
  if (n == 0) {
    throw Error(ErrorCode::EmptySplit,
                std::string(which) + " split has no rows");
  }
  if (static_cast<Eigen::Index>(data.labels.size()) != n) {
    throw Error(ErrorCode::ShapeMismatch,
                std::string(which) + " split: " +
                    std::to_string(data.labels.size()) + " labels for " +
                    std::to_string(n) + " rows");
  }
  for (int y : data.labels) {
    if (y < 0 || y >= cfg.n_classes) {
      throw Error(ErrorCode::InvalidLabel,
                  std::string(which) + " split: class index " +
                      std::to_string(y) + " out of range");
    }
  }
}

}  // namespace

std::pair<FusionModel, TrainHistory> train(FusionModel model,
                                           const LabeledBatch& train_data,
                                           const ValidationLossFn& val_loss) {
  const FusionConfig cfg = model.config;
  validate_config(cfg);
  check_batch(train_data, cfg, "train");

  const Eigen::Index n = train_data.text_embeddings.rows();
  FusionModel adam_m = zeros_like(model);
  FusionModel adam_v = zeros_like(model);
  int step = 0;

  Rng shuffle_rng(derive_seed(cfg.seed, "shuffle"));
  const std::uint64_t dropout_base = derive_seed(cfg.seed, "dropout");

  TrainHistory history;
  FusionModel best = model;
  double best_val = std::numeric_limits<double>::infinity();
  int epochs_without_improvement = 0;

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});

  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    shuffle_rng.shuffle(order);

    double loss_sum = 0.0;
    Eigen::Index seen = 0;
    std::uint64_t batch_index = 0;
    for (Eigen::Index start = 0; start < n;
         start += static_cast<Eigen::Index>(cfg.batch_size)) {
      const Eigen::Index count =
          std::min<Eigen::Index>(cfg.batch_size, n - start);
      // A leftover single row cannot produce batch statistics; skip it rather
      // than bias the epoch (it reappears in another batch next epoch).
      if (count < 2 && cfg.numerical_pathway && n >= 2) continue;

      Eigen::MatrixXd bnum;
      if (cfg.numerical_pathway) {
        bnum.resize(count, cfg.num_dim);
        for (Eigen::Index r = 0; r < count; ++r) {
          bnum.row(r) =
              train_data.num_features.row(order[static_cast<std::size_t>(start + r)]);
        }
      }
      Eigen::MatrixXd btext(count, cfg.text_dim);
      std::vector<int> blabels(static_cast<std::size_t>(count));
      for (Eigen::Index r = 0; r < count; ++r) {
        const Eigen::Index src = order[static_cast<std::size_t>(start + r)];
        btext.row(r) = train_data.text_embeddings.row(src);
        blabels[static_cast<std::size_t>(r)] =
            train_data.labels[static_cast<std::size_t>(src)];
      }

      const std::uint64_t mask_seed = derive_seed(
          dropout_base,
          (static_cast<std::uint64_t>(epoch) << 32) | batch_index);
      ForwardResult fwd =
          forward(model, bnum, btext, ForwardMode::Train, mask_seed);
      const double loss = softmax_cross_entropy(fwd.logits, blabels);
      Gradients g = backward(model, fwd.cache, blabels);

      ++step;
      const double lr = cfg.learning_rate;
      if (cfg.numerical_pathway) {
        adam_update(model.bn_gamma, g.bn_gamma, adam_m.bn_gamma,
                    adam_v.bn_gamma, lr, step);
        adam_update(model.bn_beta, g.bn_beta, adam_m.bn_beta, adam_v.bn_beta,
                    lr, step);
        adam_update(model.w_num, g.w_num, adam_m.w_num, adam_v.w_num, lr, step);
        adam_update(model.b_num, g.b_num, adam_m.b_num, adam_v.b_num, lr, step);
      }
      adam_update(model.w_text, g.w_text, adam_m.w_text, adam_v.w_text, lr,
                  step);
      adam_update(model.b_text, g.b_text, adam_m.b_text, adam_v.b_text, lr,
                  step);
      adam_update(model.w_out, g.w_out, adam_m.w_out, adam_v.w_out, lr, step);
      adam_update(model.b_out, g.b_out, adam_m.b_out, adam_v.b_out, lr, step);

      loss_sum += loss * static_cast<double>(count);
      seen += count;
      ++batch_index;
    }

    history.train_loss.push_back(loss_sum / static_cast<double>(seen));
    const double vl = val_loss(model);
    history.val_loss.push_back(vl);
    history.stopped_epoch = epoch;

    // Only a strict decrease counts as progress; equal loss burns patience.
    if (vl < best_val) {
      best_val = vl;
      best = model;
      history.best_epoch = epoch;
      epochs_without_improvement = 0;
    } else {
      ++epochs_without_improvement;
      if (epochs_without_improvement >= cfg.early_stopping_patience) break;
    }
  }

  return {std::move(best), std::move(history)};
}

std::pair<FusionModel, TrainHistory> train(FusionModel model,
                                           const LabeledBatch& train_data,
                                           const LabeledBatch& val_data) {
  check_batch(val_data, model.config, "validation");
  auto val_loss = [&val_data](FusionModel& m) {
    ForwardResult fwd = forward(m, val_data.num_features,
                                val_data.text_embeddings,
                                ForwardMode::Inference);
    return softmax_cross_entropy(fwd.logits, val_data.labels);
  };
  return train(std::move(model), train_data, ValidationLossFn(val_loss));
}

}  // namespace stylofuse
