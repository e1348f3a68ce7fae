#include "stylofuse/evaluation.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "stylofuse/corpus.hpp"

namespace stylofuse {

namespace {

double safe_ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

double f1_from(double tp, double fp, double fn) {
  const double precision = safe_ratio(tp, tp + fp);
  const double recall = safe_ratio(tp, tp + fn);
  return safe_ratio(2.0 * precision * recall, precision + recall);
}

std::string format_loss(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ConfusionMatrix confusion(const std::vector<int>& y_true,
                          const std::vector<int>& y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(y_true.size()) + " gold labels vs " +
                    std::to_string(y_pred.size()) + " predictions");
  }
  if (y_true.empty()) {
    throw Error(ErrorCode::EmptyInput, "no labels to score");
  }
  ConfusionMatrix m;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const int t = y_true[i];
    const int p = y_pred[i];
    if ((t != kAiClass && t != kHumanClass) ||
        (p != kAiClass && p != kHumanClass)) {
      throw Error(ErrorCode::InvalidLabel,
                  "class index out of range at position " + std::to_string(i));
    }
    if (t == kAiClass) {
      (p == kAiClass ? m.tp_ai : m.fn_ai) += 1;
    } else {
      (p == kAiClass ? m.fp_ai : m.tn_ai) += 1;
    }
  }
  return m;
}

EvalReport f1_scores(const ConfusionMatrix& counts) {
  const std::int64_t total = counts.total();
  if (total < 1) {
    throw Error(ErrorCode::EmptyInput, "confusion matrix is empty");
  }
  const double tp = static_cast<double>(counts.tp_ai);
  const double fp = static_cast<double>(counts.fp_ai);
  const double fn = static_cast<double>(counts.fn_ai);
  const double tn = static_cast<double>(counts.tn_ai);

  EvalReport r;
  r.confusion = counts;
  r.n = total;
  r.f1_ai = f1_from(tp, fp, fn);
  // From the human class's point of view the roles of fp and fn swap.
  r.f1_human = f1_from(tn, fn, fp);
  r.macro_f1 = 0.5 * (r.f1_ai + r.f1_human);
  // Micro pools counts over both classes before forming precision/recall.
  const double pooled_tp = tp + tn;
  const double pooled_fp = fp + fn;
  const double pooled_fn = fn + fp;
  r.micro_f1 = f1_from(pooled_tp, pooled_fp, pooled_fn);
  r.accuracy = (tp + tn) / static_cast<double>(total);
  return r;
}

AblationDelta ablation_compare(const EvalReport& full,
                               const EvalReport& ablated) {
  if (full.n != ablated.n) {
    throw Error(ErrorCode::SplitMismatch,
                "reports cover " + std::to_string(full.n) + " vs " +
                    std::to_string(ablated.n) + " samples");
  }
  AblationDelta d;
  d.macro_f1_points = (full.macro_f1 - ablated.macro_f1) * 100.0;
  return d;
}

void export_loss_curves(const TrainHistory& history,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string() +
                                        " for writing");
  }
  out << "epoch,train_loss,val_loss,best\n";
  for (std::size_t i = 0; i < history.train_loss.size(); ++i) {
    const int epoch = static_cast<int>(i) + 1;
    out << epoch << ',' << format_loss(history.train_loss[i]) << ','
        << format_loss(history.val_loss[i]) << ','
        << (epoch == history.best_epoch ? 1 : 0) << '\n';
  }
  if (!out) {
    throw Error(ErrorCode::IoError, "short write to " + path.string());
  }
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::json j;
  j["macro_f1"] = report.macro_f1;
  j["micro_f1"] = report.micro_f1;
  j["f1_ai"] = report.f1_ai;
  j["f1_human"] = report.f1_human;
  j["accuracy"] = report.accuracy;
  j["confusion"] = {{"tp_ai", report.confusion.tp_ai},
                    {"fp_ai", report.confusion.fp_ai},
                    {"fn_ai", report.confusion.fn_ai},
                    {"tn_ai", report.confusion.tn_ai}};
  j["n"] = report.n;
  return j.dump(2) + "\n";
}

void write_report(const EvalReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string() +
                                        " for writing");
  }
  out << report_to_json(report);
  if (!out) {
    throw Error(ErrorCode::IoError, "short write to " + path.string());
  }
}

}  // namespace stylofuse
