#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>

namespace stylofuse::cli {

/// Settings merged from the config file and command-line flags; flags win.
/// Every command echoes the resolved config to <out_dir>/run_config.ini so a
/// run can be reproduced from its output directory alone.
struct RunConfig {
  // [data]
  std::string train_path;
  std::string val_path;
  std::string eval_path;
  std::string input_path;  // dataset consumed by extract/predict
  std::string model_path;  // model consumed by predict
  std::string language = "english";

  // [encoder]
  std::string encoder_kind = "hashed";
  int dimension = 256;
  std::uint64_t hash_seed = 0x7461636f;
  std::string embeddings_path;  // precomputed vectors (JSON-Lines)

  // [fusion]
  int text_hidden = 64;
  int num_hidden = 16;
  double dropout_rate = 0.1;
  double learning_rate = 1e-3;
  int batch_size = 32;
  int max_epochs = 10;
  int patience = 2;

  // [baseline]
  double svm_lambda = 1e-4;
  int svm_epochs = 100;

  // [synth]
  int synth_per_class = 200;

  // [run]
  std::uint64_t seed = 0;
  std::string out_dir = "out";
};

/// Parses the INI-style config file. Unknown sections or keys and malformed
/// numbers are reported with their line number.
RunConfig load_run_config(const std::filesystem::path& path);

/// Serializes the config in a fixed section/key order (the echo format is
/// itself loadable).
std::string render_run_config(const RunConfig& config);

/// Writes <out_dir>/features.csv with one row per record of input_path.
int cmd_extract(const RunConfig& config, std::ostream& err);

/// Trains the fusion model on train/val and writes model.bin,
/// loss_curves.csv, and val_report.json. Partial outputs are removed when
/// the run fails.
int cmd_train(const RunConfig& config, std::ostream& err);

/// Loads model_path, scores input_path, writes predictions.jsonl; when every
/// input record is labeled, also writes report.json.
int cmd_predict(const RunConfig& config, std::ostream& err);

/// Fits TF-IDF + linear SVM on train, scores eval, writes
/// baseline_model.bin and baseline_report.json.
int cmd_baseline(const RunConfig& config, std::ostream& err);

/// Trains the full and pathway-ablated models with identical seed and data,
/// writes report_full.json, report_ablated.json, and ablation.json.
int cmd_ablate(const RunConfig& config, std::ostream& err);

/// Generates a synthetic corpus and writes train/val/eval JSON-Lines splits
/// (70/15/15 per class).
int cmd_synth(const RunConfig& config, std::ostream& err);

}  // namespace stylofuse::cli
