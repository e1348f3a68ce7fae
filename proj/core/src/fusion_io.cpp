#include <string>

#include "stylofuse/fusion_head.hpp"
#include "stylofuse/serialize.hpp"

namespace stylofuse {

namespace {

constexpr const char* kFusionKind = "stylofuse.fusion";

}  // namespace

void save_model(const FusionModel& model, const std::filesystem::path& path) {
  const FusionConfig& c = model.config;
  Container out(kFusionKind);
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

FusionModel load_model(const std::filesystem::path& path) {
  const Container in = Container::load(path, kFusionKind);

  FusionModel model;
  FusionConfig& c = model.config;
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

  auto expect = [&](const Eigen::Index got, int want, const char* what) {
    if (got != want) {
      throw Error(ErrorCode::MalformedFile,
                  std::string(what) + " has size " + std::to_string(got) +
                      ", config says " + std::to_string(want));
    }
  };

  if (c.numerical_pathway) {
    model.bn_gamma = in.get_vector("bn.gamma");
    model.bn_beta = in.get_vector("bn.beta");
    model.bn_running_mean = in.get_vector("bn.running_mean");
    model.bn_running_var = in.get_vector("bn.running_var");
    model.w_num = in.get_matrix("num.weight");
    model.b_num = in.get_vector("num.bias");
    expect(model.bn_gamma.size(), c.num_dim, "bn.gamma");
    expect(model.bn_beta.size(), c.num_dim, "bn.beta");
    expect(model.bn_running_mean.size(), c.num_dim, "bn.running_mean");
    expect(model.bn_running_var.size(), c.num_dim, "bn.running_var");
    expect(model.w_num.rows(), c.num_hidden, "num.weight rows");
    expect(model.w_num.cols(), c.num_dim, "num.weight cols");
    expect(model.b_num.size(), c.num_hidden, "num.bias");
  }
  model.w_text = in.get_matrix("text.weight");
  model.b_text = in.get_vector("text.bias");
  model.w_out = in.get_matrix("out.weight");
  model.b_out = in.get_vector("out.bias");
  expect(model.w_text.rows(), c.text_hidden, "text.weight rows");
  expect(model.w_text.cols(), c.text_dim, "text.weight cols");
  expect(model.b_text.size(), c.text_hidden, "text.bias");
  const int concat = (c.numerical_pathway ? c.num_hidden : 0) + c.text_hidden;
  expect(model.w_out.rows(), c.n_classes, "out.weight rows");
  expect(model.w_out.cols(), concat, "out.weight cols");
  expect(model.b_out.size(), c.n_classes, "out.bias");
  return model;
}

}  // namespace stylofuse
