#include "commands.hpp"

#include <charconv>
#include <cstdio>
#include <memory>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "stylofuse/baseline.hpp"
#include "stylofuse/corpus.hpp"
#include "stylofuse/evaluation.hpp"
#include "stylofuse/fusion_head.hpp"
#include "stylofuse/serialize.hpp"
#include "stylofuse/stylometry.hpp"
#include "stylofuse/text_encoder.hpp"

namespace fs = std::filesystem;

namespace stylofuse::cli {

namespace {

constexpr const char* kPipelineKind = "stylofuse.pipeline";

// ---------------------------------------------------------------------------
// Config file handling

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string shortest_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

[[noreturn]] void config_error(int line, const std::string& what) {
  throw Error(ErrorCode::InvalidConfig,
              "config line " + std::to_string(line) + ": " + what);
}

std::int64_t parse_int(const std::string& v, int line) {
  std::int64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    config_error(line, "expected an integer, got '" + v + "'");
  }
  return out;
}

std::uint64_t parse_u64(const std::string& v, int line) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    config_error(line, "expected an unsigned integer, got '" + v + "'");
  }
  return out;
}

double parse_double(const std::string& v, int line) {
  double out = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    config_error(line, "expected a number, got '" + v + "'");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shared command plumbing

Language language_or_throw(const std::string& name) {
  const std::optional<Language> lang = parse_language(name);
  if (!lang) {
    throw Error(ErrorCode::InvalidConfig, "unknown language '" + name + "'");
  }
  return *lang;
}

EncoderConfig encoder_config_from(const RunConfig& cfg) {
  const std::optional<EncoderKind> kind = parse_encoder_kind(cfg.encoder_kind);
  if (!kind) {
    throw Error(ErrorCode::InvalidConfig,
                "unknown encoder '" + cfg.encoder_kind + "'");
  }
  EncoderConfig ec;
  ec.kind = *kind;
  ec.dimension = cfg.dimension;
  ec.hash_seed = cfg.hash_seed;
  if (ec.kind == EncoderKind::Precomputed) {
    if (cfg.embeddings_path.empty()) {
      throw Error(ErrorCode::InvalidConfig,
                  "the precomputed encoder needs an embeddings file");
    }
    ec.embedding_file = cfg.embeddings_path;
  }
  return ec;
}

FusionConfig fusion_config_from(const RunConfig& cfg) {
  FusionConfig fc;
  fc.text_dim = cfg.dimension;
  fc.num_dim = kNumStylometricFeatures;
  fc.text_hidden = cfg.text_hidden;
  fc.num_hidden = cfg.num_hidden;
  fc.dropout_rate = cfg.dropout_rate;
  fc.learning_rate = cfg.learning_rate;
  fc.batch_size = cfg.batch_size;
  fc.max_epochs = cfg.max_epochs;
  fc.early_stopping_patience = cfg.patience;
  fc.seed = cfg.seed;
  return fc;
}

Eigen::MatrixXd embed_split(const DatasetSplit& split, const EncoderConfig& ec) {
  if (ec.kind == EncoderKind::Precomputed) {
    return embeddings_matrix(split, load_precomputed(*ec.embedding_file, split, ec));
  }
  return encode_batch(split, ec);
}

std::vector<int> gold_labels(const DatasetSplit& split) {
  std::vector<int> out;
  out.reserve(split.records.size());
  for (const EssayRecord& rec : split.records) {
    if (!rec.label) {
      throw Error(ErrorCode::UnlabeledRecord,
                  "record '" + rec.id + "' has no label");
    }
    out.push_back(label_index(*rec.label));
  }
  return out;
}

bool fully_labeled(const DatasetSplit& split) {
  for (const EssayRecord& rec : split.records) {
    if (!rec.label) return false;
  }
  return true;
}

LabeledBatch assemble(const DatasetSplit& split, const EncoderConfig& ec) {
  LabeledBatch batch;
  batch.labels = gold_labels(split);
  batch.num_features = features_matrix(split);
  batch.text_embeddings = embed_split(split, ec);
  return batch;
}

DatasetSplit load_required(const std::string& path, const char* what,
                           Language lang, SplitName name) {
  if (path.empty()) {
    throw Error(ErrorCode::InvalidConfig,
                std::string(what) + " dataset path is not set");
  }
  return load_split(path, lang, name);
}

// Collects the files a command writes so a failed run leaves nothing behind.
class Artifacts {
 public:
  explicit Artifacts(const RunConfig& cfg) : cfg_(cfg), dir_(cfg.out_dir) {
    if (dir_.empty()) {
      throw Error(ErrorCode::InvalidConfig, "output directory is not set");
    }
    fs::create_directories(dir_);
  }

  fs::path file(const std::string& name) {
    written_.push_back(dir_ / name);
    return written_.back();
  }

  void echo_config() {
    const fs::path p = file("run_config.ini");
    std::ofstream out(p, std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::IoError, "cannot write " + p.string());
    }
    out << render_run_config(cfg_);
  }

  void discard_all() {
    for (const fs::path& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }

 private:
  const RunConfig& cfg_;
  fs::path dir_;
  std::vector<fs::path> written_;
};

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write " + path.string());
  }
  out << content;
  if (!out) {
    throw Error(ErrorCode::IoError, "short write to " + path.string());
  }
}

// ---------------------------------------------------------------------------
// Pipeline model file: the trained fusion head plus everything needed to
// reproduce its inputs (language and encoder settings), in one container so
// `predict` needs nothing but the model and a dataset.

void save_pipeline(const FusionModel& model, const EncoderConfig& ec,
                   Language lang, const fs::path& path) {
  const FusionConfig& c = model.config;
  Container out(kPipelineKind);
  out.put_string("language", to_string(lang));
  out.put_string("encoder.kind", to_string(ec.kind));
  out.put_int("encoder.dimension", ec.dimension);
  out.put_int("encoder.hash_seed", static_cast<std::int64_t>(ec.hash_seed));
  {
    std::string orders;
    for (int o : ec.ngram_orders) {
      if (!orders.empty()) orders += ',';
      orders += std::to_string(o);
    }
    out.put_string("encoder.ngram_orders", orders);
  }

  out.put_int("config.text_dim", c.text_dim);
  out.put_int("config.num_dim", c.num_dim);
  out.put_int("config.text_hidden", c.text_hidden);
  out.put_int("config.num_hidden", c.num_hidden);
  out.put_int("config.n_classes", c.n_classes);
  out.put_int("config.numerical_pathway", c.numerical_pathway ? 1 : 0);
  out.put_real("config.dropout_rate", c.dropout_rate);
  out.put_real("config.batchnorm_epsilon", c.batchnorm_epsilon);
  out.put_real("config.batchnorm_momentum", c.batchnorm_momentum);
  out.put_real("config.learning_rate", c.learning_rate);
  out.put_int("config.batch_size", c.batch_size);
  out.put_int("config.max_epochs", c.max_epochs);
  out.put_int("config.early_stopping_patience", c.early_stopping_patience);
  out.put_int("config.seed", static_cast<std::int64_t>(c.seed));

  if (c.numerical_pathway) {
    out.put_vector("bn.gamma", model.bn_gamma);
    out.put_vector("bn.beta", model.bn_beta);
    out.put_vector("bn.running_mean", model.bn_running_mean);
    out.put_vector("bn.running_var", model.bn_running_var);
    out.put_tensor("num.weight", model.w_num);
    out.put_vector("num.bias", model.b_num);
  }
  out.put_tensor("text.weight", model.w_text);
  out.put_vector("text.bias", model.b_text);
  out.put_tensor("out.weight", model.w_out);
  out.put_vector("out.bias", model.b_out);
  out.save(path);
}

struct Pipeline {
  FusionModel model;
  EncoderConfig encoder;
  Language language = Language::English;
};

Pipeline load_pipeline(const fs::path& path) {
  const Container in = Container::load(path, kPipelineKind);
  Pipeline p;

  p.language = language_or_throw(in.get_string("language"));
  const std::optional<EncoderKind> kind =
      parse_encoder_kind(in.get_string("encoder.kind"));
  if (!kind) {
    throw Error(ErrorCode::MalformedFile,
                "unknown encoder '" + in.get_string("encoder.kind") + "'");
  }
  p.encoder.kind = *kind;
  p.encoder.dimension = static_cast<int>(in.get_int("encoder.dimension"));
  p.encoder.hash_seed =
      static_cast<std::uint64_t>(in.get_int("encoder.hash_seed"));
  p.encoder.ngram_orders.clear();
  {
    std::istringstream orders(in.get_string("encoder.ngram_orders"));
    std::string item;
    while (std::getline(orders, item, ',')) {
      p.encoder.ngram_orders.push_back(static_cast<int>(parse_int(item, 0)));
    }
  }

  FusionConfig& c = p.model.config;
  c.text_dim = static_cast<int>(in.get_int("config.text_dim"));
  c.num_dim = static_cast<int>(in.get_int("config.num_dim"));
  c.text_hidden = static_cast<int>(in.get_int("config.text_hidden"));
  c.num_hidden = static_cast<int>(in.get_int("config.num_hidden"));
  c.n_classes = static_cast<int>(in.get_int("config.n_classes"));
  c.numerical_pathway = in.get_int("config.numerical_pathway") != 0;
  c.dropout_rate = in.get_real("config.dropout_rate");
  c.batchnorm_epsilon = in.get_real("config.batchnorm_epsilon");
  c.batchnorm_momentum = in.get_real("config.batchnorm_momentum");
  c.learning_rate = in.get_real("config.learning_rate");
  c.batch_size = static_cast<int>(in.get_int("config.batch_size"));
  c.max_epochs = static_cast<int>(in.get_int("config.max_epochs"));
  c.early_stopping_patience =
      static_cast<int>(in.get_int("config.early_stopping_patience"));
  c.seed = static_cast<std::uint64_t>(in.get_int("config.seed"));
  validate_config(c);

  if (c.numerical_pathway) {
    p.model.bn_gamma = in.get_vector("bn.gamma");
    p.model.bn_beta = in.get_vector("bn.beta");
    p.model.bn_running_mean = in.get_vector("bn.running_mean");
    p.model.bn_running_var = in.get_vector("bn.running_var");
    p.model.w_num = in.get_matrix("num.weight");
    p.model.b_num = in.get_vector("num.bias");
  }
  p.model.w_text = in.get_matrix("text.weight");
  p.model.b_text = in.get_vector("text.bias");
  p.model.w_out = in.get_matrix("out.weight");
  p.model.b_out = in.get_vector("out.bias");
  return p;
}

std::vector<int> predicted_labels(const std::vector<Prediction>& preds) {
  std::vector<int> out;
  out.reserve(preds.size());
  for (const Prediction& p : preds) out.push_back(p.label);
  return out;
}

std::string predictions_jsonl(const DatasetSplit& split,
                              const std::vector<Prediction>& preds) {
  std::string out;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    nlohmann::json j;
    j["id"] = split.records[i].id;
    j["label"] = to_string(preds[i].label == kAiClass ? Label::Ai : Label::Human);
    j["p_ai"] = preds[i].probabilities(kAiClass);
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  }

  RunConfig cfg;
  std::string section;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') config_error(lineno, "unterminated section header");
      section = line.substr(1, line.size() - 2);
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      config_error(lineno, "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string qualified = section + "." + key;

    if (qualified == "data.train") {
      cfg.train_path = value;
    } else if (qualified == "data.val") {
      cfg.val_path = value;
    } else if (qualified == "data.eval") {
      cfg.eval_path = value;
    } else if (qualified == "data.input") {
      cfg.input_path = value;
    } else if (qualified == "data.model") {
      cfg.model_path = value;
    } else if (qualified == "data.language") {
      cfg.language = value;
    } else if (qualified == "encoder.kind") {
      cfg.encoder_kind = value;
    } else if (qualified == "encoder.dimension") {
      cfg.dimension = static_cast<int>(parse_int(value, lineno));
    } else if (qualified == "encoder.hash_seed") {
      cfg.hash_seed = parse_u64(value, lineno);
    } else if (qualified == "encoder.embeddings") {
      cfg.embeddings_path = value;
    } else if (qualified == "fusion.text_hidden") {
      cfg.text_hidden = static_cast<int>(parse_int(value, lineno));
    } else if (qualified == "fusion.num_hidden") {
      cfg.num_hidden = static_cast<int>(parse_int(value, lineno));
    } else if (qualified == "fusion.dropout") {
      cfg.dropout_rate = parse_double(value, lineno);
    } else if (qualified == "fusion.learning_rate") {
      cfg.learning_rate = parse_double(value, lineno);
    } else if (qualified == "fusion.batch_size") {
      cfg.batch_size = static_cast<int>(parse_int(value, lineno));
    } else if (qualified == "fusion.max_epochs") {
      cfg.max_epochs = static_cast<int>(parse_int(value, lineno));
    } else if (qualified == "fusion.patience") {
      cfg.patience = static_cast<int>(parse_int(value, lineno));
    } else if (qualified == "baseline.lambda") {
      cfg.svm_lambda = parse_double(value, lineno);
    } else if (qualified == "baseline.epochs") {
      cfg.svm_epochs = static_cast<int>(parse_int(value, lineno));
    } else if (qualified == "synth.per_class") {
      cfg.synth_per_class = static_cast<int>(parse_int(value, lineno));
    } else if (qualified == "run.seed") {
      cfg.seed = parse_u64(value, lineno);
    } else if (qualified == "run.out") {
      cfg.out_dir = value;
    } else {
      config_error(lineno, "unknown setting '" + qualified + "'");
    }
  }
  return cfg;
}

std::string render_run_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[data]\n"
      << "train = " << c.train_path << "\n"
      << "val = " << c.val_path << "\n"
      << "eval = " << c.eval_path << "\n"
      << "input = " << c.input_path << "\n"
      << "model = " << c.model_path << "\n"
      << "language = " << c.language << "\n\n"
      << "[encoder]\n"
      << "kind = " << c.encoder_kind << "\n"
      << "dimension = " << c.dimension << "\n"
      << "hash_seed = " << c.hash_seed << "\n"
      << "embeddings = " << c.embeddings_path << "\n\n"
      << "[fusion]\n"
      << "text_hidden = " << c.text_hidden << "\n"
      << "num_hidden = " << c.num_hidden << "\n"
      << "dropout = " << shortest_double(c.dropout_rate) << "\n"
      << "learning_rate = " << shortest_double(c.learning_rate) << "\n"
      << "batch_size = " << c.batch_size << "\n"
      << "max_epochs = " << c.max_epochs << "\n"
      << "patience = " << c.patience << "\n\n"
      << "[baseline]\n"
      << "lambda = " << shortest_double(c.svm_lambda) << "\n"
      << "epochs = " << c.svm_epochs << "\n\n"
      << "[synth]\n"
      << "per_class = " << c.synth_per_class << "\n\n"
      << "[run]\n"
      << "seed = " << c.seed << "\n"
      << "out = " << c.out_dir << "\n";
  return out.str();
}

int cmd_extract(const RunConfig& cfg, std::ostream& err) {
  std::unique_ptr<Artifacts> art;
  try {
    art = std::make_unique<Artifacts>(cfg);
    art->echo_config();
    const Language lang = language_or_throw(cfg.language);
    const DatasetSplit split =
        load_required(cfg.input_path, "input", lang, SplitName::Eval);

    std::string csv = "id";
    for (const std::string& name : stylometric_feature_names()) {
      csv += ',';
      csv += name;
    }
    csv += '\n';
    for (const EssayRecord& rec : split.records) {
      const StylometricVector v = extract_features(rec.text, lang);
      csv += rec.id;
      for (double x : v.to_array()) {
        csv += ',';
        csv += shortest_double(x);
      }
      csv += '\n';
    }
    write_text_file(art->file("features.csv"), csv);
    return 0;
  } catch (const std::exception& e) {
    if (art) art->discard_all();
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_train(const RunConfig& cfg, std::ostream& err) {
  std::unique_ptr<Artifacts> art;
  try {
    art = std::make_unique<Artifacts>(cfg);
    art->echo_config();
    const Language lang = language_or_throw(cfg.language);
    const EncoderConfig ec = encoder_config_from(cfg);
    const DatasetSplit train_split =
        load_required(cfg.train_path, "train", lang, SplitName::Train);
    const DatasetSplit val_split =
        load_required(cfg.val_path, "val", lang, SplitName::Dev);

    const LabeledBatch train_batch = assemble(train_split, ec);
    const LabeledBatch val_batch = assemble(val_split, ec);

    auto [model, history] =
        train(init_model(fusion_config_from(cfg)), train_batch, val_batch);

    save_pipeline(model, ec, lang, art->file("model.bin"));
    export_loss_curves(history, art->file("loss_curves.csv"));

    const std::vector<Prediction> preds =
        predict_batch(model, val_batch.num_features, val_batch.text_embeddings);
    write_report(f1_scores(confusion(val_batch.labels, predicted_labels(preds))),
                 art->file("val_report.json"));
    return 0;
  } catch (const std::exception& e) {
    if (art) art->discard_all();
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_predict(const RunConfig& cfg, std::ostream& err) {
  std::unique_ptr<Artifacts> art;
  try {
    art = std::make_unique<Artifacts>(cfg);
    art->echo_config();
    if (cfg.model_path.empty()) {
      throw Error(ErrorCode::InvalidConfig, "model path is not set");
    }
    Pipeline pipe = load_pipeline(cfg.model_path);
    if (pipe.encoder.kind == EncoderKind::Precomputed) {
      if (cfg.embeddings_path.empty()) {
        throw Error(ErrorCode::InvalidConfig,
                    "this model needs a precomputed embeddings file");
      }
      pipe.encoder.embedding_file = cfg.embeddings_path;
    }
    const DatasetSplit split =
        load_required(cfg.input_path, "input", pipe.language, SplitName::Eval);

    const Eigen::MatrixXd features = features_matrix(split);
    const Eigen::MatrixXd embeddings = embed_split(split, pipe.encoder);
    const std::vector<Prediction> preds =
        predict_batch(pipe.model, features, embeddings);

    write_text_file(art->file("predictions.jsonl"),
                    predictions_jsonl(split, preds));
    if (!split.records.empty() && fully_labeled(split)) {
      write_report(
          f1_scores(confusion(gold_labels(split), predicted_labels(preds))),
          art->file("report.json"));
    }
    return 0;
  } catch (const std::exception& e) {
    if (art) art->discard_all();
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_baseline(const RunConfig& cfg, std::ostream& err) {
  std::unique_ptr<Artifacts> art;
  try {
    art = std::make_unique<Artifacts>(cfg);
    art->echo_config();
    const Language lang = language_or_throw(cfg.language);
    const DatasetSplit train_split =
        load_required(cfg.train_path, "train", lang, SplitName::Train);
    const DatasetSplit eval_split =
        load_required(cfg.eval_path, "eval", lang, SplitName::Eval);

    std::vector<std::string> texts;
    texts.reserve(train_split.records.size());
    for (const EssayRecord& rec : train_split.records) texts.push_back(rec.text);

    BaselineModel model;
    model.tfidf = fit_tfidf(texts, lang);

    std::vector<int> train_y;
    for (int cls : gold_labels(train_split)) {
      train_y.push_back(svm_label_from_class(cls));
    }
    model.svm = train_svm(
        transform_tfidf(model.tfidf, texts), train_y,
        static_cast<Eigen::Index>(model.tfidf.vocabulary.size()),
        cfg.svm_lambda, cfg.svm_epochs, cfg.seed);

    std::vector<int> pred;
    pred.reserve(eval_split.records.size());
    for (const EssayRecord& rec : eval_split.records) {
      pred.push_back(class_from_svm_label(
          predict_svm(model.svm, transform_tfidf(model.tfidf, rec.text))));
    }

    save_baseline(model, art->file("baseline_model.bin"));
    write_report(f1_scores(confusion(gold_labels(eval_split), pred)),
                 art->file("baseline_report.json"));
    return 0;
  } catch (const std::exception& e) {
    if (art) art->discard_all();
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_ablate(const RunConfig& cfg, std::ostream& err) {
  std::unique_ptr<Artifacts> art;
  try {
    art = std::make_unique<Artifacts>(cfg);
    art->echo_config();
    const Language lang = language_or_throw(cfg.language);
    const EncoderConfig ec = encoder_config_from(cfg);
    const DatasetSplit train_split =
        load_required(cfg.train_path, "train", lang, SplitName::Train);
    const DatasetSplit val_split =
        load_required(cfg.val_path, "val", lang, SplitName::Dev);
    const DatasetSplit eval_split =
        load_required(cfg.eval_path, "eval", lang, SplitName::Eval);

    const LabeledBatch train_batch = assemble(train_split, ec);
    const LabeledBatch val_batch = assemble(val_split, ec);
    const LabeledBatch eval_batch = assemble(eval_split, ec);

    const FusionConfig full_config = fusion_config_from(cfg);
    auto evaluate = [&](const FusionConfig& fc) {
      auto [model, history] = train(init_model(fc), train_batch, val_batch);
      const std::vector<Prediction> preds = predict_batch(
          model, eval_batch.num_features, eval_batch.text_embeddings);
      return f1_scores(confusion(eval_batch.labels, predicted_labels(preds)));
    };

    const EvalReport full = evaluate(full_config);
    const EvalReport ablated = evaluate(disable_numerical_pathway(full_config));
    const AblationDelta delta = ablation_compare(full, ablated);

    write_report(full, art->file("report_full.json"));
    write_report(ablated, art->file("report_ablated.json"));

    nlohmann::json j;
    j["macro_f1_full"] = full.macro_f1;
    j["macro_f1_ablated"] = ablated.macro_f1;
    j["delta_points"] = delta.macro_f1_points;
    write_text_file(art->file("ablation.json"), j.dump(2) + "\n");
    return 0;
  } catch (const std::exception& e) {
    if (art) art->discard_all();
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_synth(const RunConfig& cfg, std::ostream& err) {
  std::unique_ptr<Artifacts> art;
  try {
    art = std::make_unique<Artifacts>(cfg);
    art->echo_config();
    const Language lang = language_or_throw(cfg.language);
    if (cfg.synth_per_class < 1) {
      throw Error(ErrorCode::InvalidCount,
                  "per_class must be positive, got " +
                      std::to_string(cfg.synth_per_class));
    }
    const std::size_t n = static_cast<std::size_t>(cfg.synth_per_class);
    const DatasetSplit corpus = generate_synthetic_corpus(cfg.seed, n, lang);

    // Stratified 70/15/15: the same cut points apply inside each class block.
    const std::size_t n_train = n * 70 / 100;
    const std::size_t n_val = n * 15 / 100;
    auto slice = [&](SplitName name, std::size_t from, std::size_t to) {
      DatasetSplit s;
      s.name = name;
      for (std::size_t i = from; i < to; ++i) {
        s.records.push_back(corpus.records[i]);          // ai block
        s.records.push_back(corpus.records[n + i]);      // human block
      }
      return s;
    };
    write_split(slice(SplitName::Train, 0, n_train), art->file("train.jsonl"));
    write_split(slice(SplitName::Dev, n_train, n_train + n_val),
                art->file("val.jsonl"));
    write_split(slice(SplitName::Eval, n_train + n_val, n),
                art->file("eval.jsonl"));
    return 0;
  } catch (const std::exception& e) {
    if (art) art->discard_all();
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace stylofuse::cli
