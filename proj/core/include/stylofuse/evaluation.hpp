#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stylofuse/errors.hpp"
#include "stylofuse/fusion_head.hpp"

namespace stylofuse {

/// Binary confusion counts from the ai class's point of view (ai = positive).
struct ConfusionMatrix {
  std::int64_t tp_ai = 0;  // true ai, predicted ai
  std::int64_t fp_ai = 0;  // true human, predicted ai
  std::int64_t fn_ai = 0;  // true ai, predicted human
  std::int64_t tn_ai = 0;  // true human, predicted human

  std::int64_t total() const { return tp_ai + fp_ai + fn_ai + tn_ai; }
  bool operator==(const ConfusionMatrix&) const = default;
};

struct EvalReport {
  double macro_f1 = 0.0;
  double micro_f1 = 0.0;
  double f1_ai = 0.0;
  double f1_human = 0.0;
  double accuracy = 0.0;
  ConfusionMatrix confusion;
  std::int64_t n = 0;
};

/// Tallies predictions against gold labels (both in the ai=0/human=1
/// convention). Throws LengthMismatch or EmptyInput.
ConfusionMatrix confusion(const std::vector<int>& y_true,
                          const std::vector<int>& y_pred);

/// Per-class, macro and micro F1 from the counts; any 0/0 ratio is scored 0.
/// Micro-F1 pools the per-class counts, which for single-label binary
/// classification lands exactly on accuracy.
EvalReport f1_scores(const ConfusionMatrix& counts);

struct AblationDelta {
  double macro_f1_points = 0.0;  // (full - ablated) * 100
};

/// Percentage-point macro-F1 gap between two reports over the same split.
/// Throws SplitMismatch when the sample counts differ.
AblationDelta ablation_compare(const EvalReport& full,
                               const EvalReport& ablated);

/// Writes `epoch,train_loss,val_loss,best` CSV rows, losses printed with 17
/// significant digits so reading them back is exact. Throws IoError.
void export_loss_curves(const TrainHistory& history,
                        const std::filesystem::path& path);

/// JSON rendering of a report with stable field order.
std::string report_to_json(const EvalReport& report);
void write_report(const EvalReport& report, const std::filesystem::path& path);

}  // namespace stylofuse
