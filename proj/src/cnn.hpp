#ifndef TRE_CNN_HPP
#define TRE_CNN_HPP

#include <array>
#include <string>
#include <vector>

#include "contexts.hpp"
#include "embeddings.hpp"

namespace tre {

// Class indices are fixed: 0 = AFTER, 1 = BEFORE, 2 = OTHER. Argmax ties
// resolve to the lowest index, so the zero model predicts AFTER.
int class_of(Label l);
Label label_of_class(int c);

struct ModelConfig {
  int dim = 300;
  int n_filters = 100;
  int window = 5;  // filter width h
  int n_classes = 3;
};

struct TrainConfig {
  int minibatch = 100;
  double dropout = 0.5;
  int epochs = 10;
  double val_fraction = 0.1;
  double rho = 0.95;
  double eps = 1e-6;
  std::uint64_t rng_seed = 1;
  double init_scale = 0.01;  // uniform(-s, s) weight init
};

// Conv filters, conv bias, softmax weights, softmax bias; flat row-major
// storage, all float64.
struct ModelParams {
  ModelConfig cfg;
  std::vector<double> conv_w;   // n_filters x (window * dim)
  std::vector<double> conv_b;   // n_filters
  std::vector<double> soft_w;   // n_filters x n_classes
  std::vector<double> soft_b;   // n_classes

  static ModelParams zeros(const ModelConfig& cfg);
  static ModelParams random(const ModelConfig& cfg, double scale, Rng& rng);

  std::size_t parameter_count() const;
};

struct Gradients {
  std::vector<double> conv_w, conv_b, soft_w, soft_b;
  static Gradients zeros(const ModelConfig& cfg);
};

struct Prediction {
  std::vector<double> probs;  // size n_classes, sums to 1
  Label label = Label::After;
  double confidence = 0.0;
};

// Training-mode forward uses a per-filter 0/1 dropout mask with inverted
// scaling 1/(1-p); empty mask means inference.
Prediction forward(const ModelParams& model, const EmbeddingTable& table,
                   const std::vector<std::string>& tokens,
                   const std::vector<int>& dropout_mask = {},
                   double dropout_p = 0.0);

struct Batch {
  std::vector<const Instance*> items;
  // one mask per item (may be empty for inference-style loss)
  std::vector<std::vector<int>> masks;
  double dropout_p = 0.0;
};

// Mean cross-entropy over the batch plus gradients for all four parameter
// blocks. Embeddings are frozen. Max-pool gradient goes to the earliest
// argmax window.
std::pair<double, Gradients> loss_and_gradients(const ModelParams& model,
                                                const EmbeddingTable& table,
                                                const Batch& batch);

struct AdadeltaState {
  Gradients acc_grad_sq;   // E[g^2]
  Gradients acc_delta_sq;  // E[dx^2]
  static AdadeltaState zeros(const ModelConfig& cfg);
};

void adadelta_step(ModelParams& model, AdadeltaState& state,
                   const Gradients& grads, double rho, double eps);

struct EpochReport {
  int epoch = 0;
  double mean_train_loss = 0.0;
  double val_accuracy = 0.0;
};

struct TrainResult {
  ModelParams model;  // snapshot with highest validation accuracy
  int best_epoch = 0;
  std::vector<EpochReport> epochs;
  std::vector<double> batch_losses;  // full trajectory, for determinism checks
  std::string data_fingerprint;
};

TrainResult train(const std::vector<Instance>& instances,
                  const EmbeddingTable& table, const ModelConfig& mcfg,
                  const TrainConfig& tcfg);

Prediction predict(const ModelParams& model, const EmbeddingTable& table,
                   const std::vector<std::string>& tokens);

// JSON checkpoint: shapes, parameters, training config, seed, fingerprint.
void save_checkpoint(const std::string& path, const ModelParams& model,
                     const TrainConfig& tcfg, const std::string& fingerprint);
ModelParams load_checkpoint(const std::string& path);

std::string fingerprint_instances(const std::vector<Instance>& instances);

}  // namespace tre

#endif
