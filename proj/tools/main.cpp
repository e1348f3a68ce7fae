#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using stylofuse::cli::RunConfig;

// One bundle of flag storage per subcommand; only flags the user actually
// passed (or the STYLOFUSE_OUT environment variable supplied) override the
// config-file values.
struct Flags {
  std::string config;
  std::uint64_t seed = 0;
  std::string out;
  std::string language;
  std::string encoder;
  std::string embeddings;
  int dimension = 0;
  std::uint64_t hash_seed = 0;

  std::string train, val, eval, input, model;
  int text_hidden = 0, num_hidden = 0, batch_size = 0, max_epochs = 0,
      patience = 0;
  double dropout = 0.0, learning_rate = 0.0;
  double svm_lambda = 0.0;
  int svm_epochs = 0;
  int per_class = 0;

  CLI::Option* o_config = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_out = nullptr;
  CLI::Option* o_language = nullptr;
  CLI::Option* o_encoder = nullptr;
  CLI::Option* o_embeddings = nullptr;
  CLI::Option* o_dimension = nullptr;
  CLI::Option* o_hash_seed = nullptr;
  CLI::Option* o_train = nullptr;
  CLI::Option* o_val = nullptr;
  CLI::Option* o_eval = nullptr;
  CLI::Option* o_input = nullptr;
  CLI::Option* o_model = nullptr;
  CLI::Option* o_text_hidden = nullptr;
  CLI::Option* o_num_hidden = nullptr;
  CLI::Option* o_batch_size = nullptr;
  CLI::Option* o_max_epochs = nullptr;
  CLI::Option* o_patience = nullptr;
  CLI::Option* o_dropout = nullptr;
  CLI::Option* o_learning_rate = nullptr;
  CLI::Option* o_svm_lambda = nullptr;
  CLI::Option* o_svm_epochs = nullptr;
  CLI::Option* o_per_class = nullptr;

  void attach_common(CLI::App* cmd) {
    o_config = cmd->add_option("--config", config,
                               "INI config file; flags override its values");
    o_seed = cmd->add_option("--seed", seed, "master random seed");
    o_out = cmd->add_option("--out", out, "output directory")
                ->envname("STYLOFUSE_OUT");
    o_language = cmd->add_option("--language", language, "english or arabic");
    o_encoder =
        cmd->add_option("--encoder", encoder, "hashed or precomputed");
    o_embeddings = cmd->add_option("--embeddings", embeddings,
                                   "precomputed embeddings (JSON-Lines)");
    o_dimension =
        cmd->add_option("--dimension", dimension, "embedding dimension");
    o_hash_seed =
        cmd->add_option("--hash-seed", hash_seed, "n-gram hashing seed");
  }

  void attach_fusion(CLI::App* cmd) {
    o_text_hidden =
        cmd->add_option("--text-hidden", text_hidden, "text hidden units");
    o_num_hidden = cmd->add_option("--num-hidden", num_hidden,
                                   "numerical hidden units");
    o_dropout = cmd->add_option("--dropout", dropout, "text dropout rate");
    o_learning_rate =
        cmd->add_option("--learning-rate", learning_rate, "Adam step size");
    o_batch_size = cmd->add_option("--batch-size", batch_size, "batch size");
    o_max_epochs = cmd->add_option("--epochs", max_epochs, "epoch budget");
    o_patience = cmd->add_option("--patience", patience,
                                 "early-stopping patience in epochs");
  }

  void apply(RunConfig& cfg) const {
    auto given = [](const CLI::Option* o) { return o != nullptr && o->count() > 0; };
    if (given(o_seed)) cfg.seed = seed;
    if (given(o_out)) cfg.out_dir = out;
    if (given(o_language)) cfg.language = language;
    if (given(o_encoder)) cfg.encoder_kind = encoder;
    if (given(o_embeddings)) cfg.embeddings_path = embeddings;
    if (given(o_dimension)) cfg.dimension = dimension;
    if (given(o_hash_seed)) cfg.hash_seed = hash_seed;
    if (given(o_train)) cfg.train_path = train;
    if (given(o_val)) cfg.val_path = val;
    if (given(o_eval)) cfg.eval_path = eval;
    if (given(o_input)) cfg.input_path = input;
    if (given(o_model)) cfg.model_path = model;
    if (given(o_text_hidden)) cfg.text_hidden = text_hidden;
    if (given(o_num_hidden)) cfg.num_hidden = num_hidden;
    if (given(o_dropout)) cfg.dropout_rate = dropout;
    if (given(o_learning_rate)) cfg.learning_rate = learning_rate;
    if (given(o_batch_size)) cfg.batch_size = batch_size;
    if (given(o_max_epochs)) cfg.max_epochs = max_epochs;
    if (given(o_patience)) cfg.patience = patience;
    if (given(o_svm_lambda)) cfg.svm_lambda = svm_lambda;
    if (given(o_svm_epochs)) cfg.svm_epochs = svm_epochs;
    if (given(o_per_class)) cfg.synth_per_class = per_class;
  }

  RunConfig resolve() const {
    RunConfig cfg;
    if (o_config != nullptr && o_config->count() > 0) {
      cfg = stylofuse::cli::load_run_config(config);
    }
    apply(cfg);
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"machine-text detector: stylometric + embedding fusion"};
  app.require_subcommand(1);

  Flags extract_flags, train_flags, predict_flags, baseline_flags,
      ablate_flags, synth_flags;

  CLI::App* extract =
      app.add_subcommand("extract", "write the stylometric features CSV");
  extract_flags.attach_common(extract);
  extract_flags.o_input =
      extract->add_option("--input", extract_flags.input, "dataset to process");

  CLI::App* train =
      app.add_subcommand("train", "train the fusion model");
  train_flags.attach_common(train);
  train_flags.attach_fusion(train);
  train_flags.o_train =
      train->add_option("--train", train_flags.train, "training split");
  train_flags.o_val =
      train->add_option("--val", train_flags.val, "validation split");

  CLI::App* predict =
      app.add_subcommand("predict", "score a dataset with a trained model");
  predict_flags.attach_common(predict);
  predict_flags.o_model =
      predict->add_option("--model", predict_flags.model, "model file");
  predict_flags.o_input =
      predict->add_option("--input", predict_flags.input, "dataset to score");

  CLI::App* baseline =
      app.add_subcommand("baseline", "TF-IDF + linear SVM reference");
  baseline_flags.attach_common(baseline);
  baseline_flags.o_train =
      baseline->add_option("--train", baseline_flags.train, "training split");
  baseline_flags.o_eval =
      baseline->add_option("--eval", baseline_flags.eval, "evaluation split");
  baseline_flags.o_svm_lambda = baseline->add_option(
      "--lambda", baseline_flags.svm_lambda, "SVM regularization strength");
  baseline_flags.o_svm_epochs = baseline->add_option(
      "--svm-epochs", baseline_flags.svm_epochs, "SVM training epochs");

  CLI::App* ablate = app.add_subcommand(
      "ablate", "train with and without the stylometric pathway");
  ablate_flags.attach_common(ablate);
  ablate_flags.attach_fusion(ablate);
  ablate_flags.o_train =
      ablate->add_option("--train", ablate_flags.train, "training split");
  ablate_flags.o_val =
      ablate->add_option("--val", ablate_flags.val, "validation split");
  ablate_flags.o_eval =
      ablate->add_option("--eval", ablate_flags.eval, "evaluation split");

  CLI::App* synth = app.add_subcommand(
      "synth", "generate a labeled synthetic corpus with splits");
  synth_flags.attach_common(synth);
  synth_flags.o_per_class = synth->add_option(
      "--per-class", synth_flags.per_class, "records per class");

  CLI11_PARSE(app, argc, argv);

  try {
    if (extract->parsed()) {
      return stylofuse::cli::cmd_extract(extract_flags.resolve(), std::cerr);
    }
    if (train->parsed()) {
      return stylofuse::cli::cmd_train(train_flags.resolve(), std::cerr);
    }
    if (predict->parsed()) {
      return stylofuse::cli::cmd_predict(predict_flags.resolve(), std::cerr);
    }
    if (baseline->parsed()) {
      return stylofuse::cli::cmd_baseline(baseline_flags.resolve(), std::cerr);
    }
    if (ablate->parsed()) {
      return stylofuse::cli::cmd_ablate(ablate_flags.resolve(), std::cerr);
    }
    if (synth->parsed()) {
      return stylofuse::cli::cmd_synth(synth_flags.resolve(), std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
