#include "cnn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tre {

int class_of(Label l) {
  switch (l) {
    case Label::After: return 0;
    case Label::Before: return 1;
    case Label::Other: return 2;
    default: throw UsageError("UNLABELED instance has no class");
  }
}

Label label_of_class(int c) {
  switch (c) {
    case 0: return Label::After;
    case 1: return Label::Before;
    case 2: return Label::Other;
    default: throw UsageError("bad class index " + std::to_string(c));
  }
}

ModelParams ModelParams::zeros(const ModelConfig& cfg) {
  ModelParams p;
  p.cfg = cfg;
  p.conv_w.assign(static_cast<std::size_t>(cfg.n_filters) * cfg.window * cfg.dim, 0.0);
  p.conv_b.assign(cfg.n_filters, 0.0);
  p.soft_w.assign(static_cast<std::size_t>(cfg.n_filters) * cfg.n_classes, 0.0);
  p.soft_b.assign(cfg.n_classes, 0.0);
  return p;
}

ModelParams ModelParams::random(const ModelConfig& cfg, double scale, Rng& rng) {
  ModelParams p = zeros(cfg);
  for (auto* block : {&p.conv_w, &p.conv_b, &p.soft_w, &p.soft_b})
    for (double& v : *block) v = rng.next_range(-scale, scale);
  return p;
}

std::size_t ModelParams::parameter_count() const {
  return conv_w.size() + conv_b.size() + soft_w.size() + soft_b.size();
}

Gradients Gradients::zeros(const ModelConfig& cfg) {
  ModelParams p = ModelParams::zeros(cfg);
  return Gradients{std::move(p.conv_w), std::move(p.conv_b),
                   std::move(p.soft_w), std::move(p.soft_b)};
}

AdadeltaState AdadeltaState::zeros(const ModelConfig& cfg) {
  return AdadeltaState{Gradients::zeros(cfg), Gradients::zeros(cfg)};
}

namespace {

struct ForwardCache {
  // embedding pointer per position; nullptr means the zero vector
  std::vector<const std::vector<double>*> embs;
  int n_windows = 0;                 // valid windows, starting at each real token
  std::vector<double> activations;   // n_windows x n_filters, post-ReLU input a
  std::vector<double> features;      // n_filters, pooled ReLU output
  std::vector<int> argmax_window;    // earliest max window per filter
  std::vector<double> dropped;       // features after dropout scaling
  std::vector<double> probs;
};

ForwardCache run_forward(const ModelParams& model, const EmbeddingTable& table,
                         const std::vector<std::string>& tokens,
                         const std::vector<int>& mask, double dropout_p) {
  const ModelConfig& cfg = model.cfg;
  if (tokens.empty()) throw UsageError("forward: empty token sequence");

  // windows start at every non-trailing-PAD position; positions past the
  // sequence read as PAD (zero vectors), which makes trailing PAD a no-op
  int n_real = 0;
  for (std::size_t t = 0; t < tokens.size(); ++t)
    if (tokens[t] != kPadToken) n_real = static_cast<int>(t) + 1;
  if (n_real == 0) throw UsageError("forward: all-PAD token sequence");

  ForwardCache cache;
  cache.embs.resize(n_real + cfg.window - 1, nullptr);
  for (int t = 0; t < n_real + cfg.window - 1; ++t) {
    if (t >= static_cast<int>(tokens.size())) continue;
    if (tokens[t] == kPadToken) continue;
    cache.embs[t] = &table.lookup(tokens[t]);
  }

  cache.n_windows = n_real;
  cache.activations.assign(static_cast<std::size_t>(n_real) * cfg.n_filters, 0.0);
  cache.features.assign(cfg.n_filters, 0.0);
  cache.argmax_window.assign(cfg.n_filters, 0);

  for (int t = 0; t < n_real; ++t) {
    for (int k = 0; k < cfg.n_filters; ++k) {
      double a = model.conv_b[k];
      const double* w = &model.conv_w[static_cast<std::size_t>(k) * cfg.window * cfg.dim];
      for (int u = 0; u < cfg.window; ++u) {
        const std::vector<double>* x = cache.embs[t + u];
        if (!x) continue;
        const double* xp = x->data();
        const double* wp = w + static_cast<std::size_t>(u) * cfg.dim;
        for (int d = 0; d < cfg.dim; ++d) a += wp[d] * xp[d];
      }
      cache.activations[static_cast<std::size_t>(t) * cfg.n_filters + k] = a;
      double z = a > 0.0 ? a : 0.0;
      if (t == 0 || z > cache.features[k]) {
        cache.features[k] = z;
        cache.argmax_window[k] = t;
      }
    }
  }

  cache.dropped = cache.features;
  if (!mask.empty()) {
    if (static_cast<int>(mask.size()) != cfg.n_filters)
      throw UsageError("dropout mask size mismatch");
    double scale = 1.0 / (1.0 - dropout_p);
    for (int k = 0; k < cfg.n_filters; ++k)
      cache.dropped[k] *= mask[k] ? scale : 0.0;
  }

  std::vector<double> logits(cfg.n_classes);
  for (int j = 0; j < cfg.n_classes; ++j) {
    double v = model.soft_b[j];
    for (int k = 0; k < cfg.n_filters; ++k)
      v += model.soft_w[static_cast<std::size_t>(k) * cfg.n_classes + j] *
           cache.dropped[k];
    logits[j] = v;
  }
  double mx = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  cache.probs.resize(cfg.n_classes);
  for (int j = 0; j < cfg.n_classes; ++j) {
    cache.probs[j] = std::exp(logits[j] - mx);
    sum += cache.probs[j];
  }
  for (double& p : cache.probs) p /= sum;
  return cache;
}

Prediction to_prediction(const ForwardCache& cache) {
  Prediction pred;
  pred.probs = cache.probs;
  int best = 0;
  for (int j = 1; j < static_cast<int>(cache.probs.size()); ++j)
    if (cache.probs[j] > cache.probs[best]) best = j;  // ties -> lowest index
  pred.label = label_of_class(best);
  pred.confidence = cache.probs[best];
  return pred;
}

}  // namespace

Prediction forward(const ModelParams& model, const EmbeddingTable& table,
                   const std::vector<std::string>& tokens,
                   const std::vector<int>& dropout_mask, double dropout_p) {
  return to_prediction(run_forward(model, table, tokens, dropout_mask, dropout_p));
}

std::pair<double, Gradients> loss_and_gradients(const ModelParams& model,
                                                const EmbeddingTable& table,
                                                const Batch& batch) {
  const ModelConfig& cfg = model.cfg;
  if (batch.items.empty()) throw UsageError("empty batch");
  if (!batch.masks.empty() && batch.masks.size() != batch.items.size())
    throw UsageError("mask count does not match batch size");

  Gradients grads = Gradients::zeros(cfg);
  double loss = 0.0;
  const double inv_n = 1.0 / static_cast<double>(batch.items.size());
  const double drop_scale =
      batch.masks.empty() ? 1.0 : 1.0 / (1.0 - batch.dropout_p);

  for (std::size_t b = 0; b < batch.items.size(); ++b) {
    const Instance& inst = *batch.items[b];
    int gold = class_of(inst.label);  // throws on UNLABELED
    static const std::vector<int> kNoMask;
    const std::vector<int>& mask = batch.masks.empty() ? kNoMask : batch.masks[b];
    ForwardCache cache =
        run_forward(model, table, inst.tokens, mask, batch.dropout_p);

    loss += -std::log(cache.probs[gold]) * inv_n;

    // softmax cross-entropy
    std::vector<double> dlogits(cfg.n_classes);
    for (int j = 0; j < cfg.n_classes; ++j)
      dlogits[j] = (cache.probs[j] - (j == gold ? 1.0 : 0.0)) * inv_n;

    for (int j = 0; j < cfg.n_classes; ++j) grads.soft_b[j] += dlogits[j];
    for (int k = 0; k < cfg.n_filters; ++k) {
      double df_drop = 0.0;
      for (int j = 0; j < cfg.n_classes; ++j) {
        grads.soft_w[static_cast<std::size_t>(k) * cfg.n_classes + j] +=
            cache.dropped[k] * dlogits[j];
        df_drop += model.soft_w[static_cast<std::size_t>(k) * cfg.n_classes + j] *
                   dlogits[j];
      }
      double df = df_drop;
      if (!mask.empty()) df *= mask[k] ? drop_scale : 0.0;
      if (df == 0.0) continue;

      int t = cache.argmax_window[k];
      double a = cache.activations[static_cast<std::size_t>(t) * cfg.n_filters + k];
      if (a <= 0.0) continue;  // ReLU gate
      grads.conv_b[k] += df;
      double* gw = &grads.conv_w[static_cast<std::size_t>(k) * cfg.window * cfg.dim];
      for (int u = 0; u < cfg.window; ++u) {
        const std::vector<double>* x = cache.embs[t + u];
        if (!x) continue;
        const double* xp = x->data();
        double* gp = gw + static_cast<std::size_t>(u) * cfg.dim;
        for (int d = 0; d < cfg.dim; ++d) gp[d] += df * xp[d];
      }
    }
  }
  return {loss, std::move(grads)};
}

namespace {

void adadelta_block(std::vector<double>& x, std::vector<double>& eg2,
                    std::vector<double>& edx2, const std::vector<double>& g,
                    double rho, double eps, const char* name) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(g[i]))
      throw NumericError(std::string("non-finite gradient in ") + name);
    eg2[i] = rho * eg2[i] + (1.0 - rho) * g[i] * g[i];
    double dx = -(std::sqrt(edx2[i] + eps) / std::sqrt(eg2[i] + eps)) * g[i];
    edx2[i] = rho * edx2[i] + (1.0 - rho) * dx * dx;
    x[i] += dx;
  }
}

}  // namespace

void adadelta_step(ModelParams& model, AdadeltaState& state,
                   const Gradients& grads, double rho, double eps) {
  adadelta_block(model.conv_w, state.acc_grad_sq.conv_w,
                 state.acc_delta_sq.conv_w, grads.conv_w, rho, eps, "conv_w");
  adadelta_block(model.conv_b, state.acc_grad_sq.conv_b,
                 state.acc_delta_sq.conv_b, grads.conv_b, rho, eps, "conv_b");
  adadelta_block(model.soft_w, state.acc_grad_sq.soft_w,
                 state.acc_delta_sq.soft_w, grads.soft_w, rho, eps, "soft_w");
  adadelta_block(model.soft_b, state.acc_grad_sq.soft_b,
                 state.acc_delta_sq.soft_b, grads.soft_b, rho, eps, "soft_b");
}

std::string fingerprint_instances(const std::vector<Instance>& instances) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::string_view s) {
    h ^= fnv1a(s);
    h *= 0x100000001b3ull;
  };
  for (const auto& inst : instances) {
    for (const auto& t : inst.tokens) mix(t);
    mix(label_name(inst.label));
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

TrainResult train(const std::vector<Instance>& instances,
                  const EmbeddingTable& table, const ModelConfig& mcfg,
                  const TrainConfig& tcfg) {
  std::array<long, 3> class_counts = {0, 0, 0};
  for (const auto& inst : instances) class_counts[class_of(inst.label)]++;
  for (int c = 0; c < 3; ++c)
    if (class_counts[c] < 2)
      throw UsageError(std::string("training data needs >= 2 instances of class ") +
                       label_name(label_of_class(c)));

  Rng rng(tcfg.rng_seed);

  // stratified validation split, seeded
  std::vector<std::size_t> train_idx, val_idx;
  for (int c = 0; c < 3; ++c) {
    std::vector<std::size_t> cls;
    for (std::size_t i = 0; i < instances.size(); ++i)
      if (class_of(instances[i].label) == c) cls.push_back(i);
    rng.shuffle(cls);
    std::size_t n_val =
        static_cast<std::size_t>(tcfg.val_fraction * static_cast<double>(cls.size()));
    val_idx.insert(val_idx.end(), cls.begin(), cls.begin() + n_val);
    train_idx.insert(train_idx.end(), cls.begin() + n_val, cls.end());
  }

  TrainResult result;
  result.data_fingerprint = fingerprint_instances(instances);
  ModelParams model = ModelParams::random(mcfg, tcfg.init_scale, rng);
  AdadeltaState state = AdadeltaState::zeros(mcfg);

  auto accuracy_on = [&](const std::vector<std::size_t>& idx) {
    if (idx.empty()) return 0.0;
    long hits = 0;
    for (std::size_t i : idx) {
      Prediction p = forward(model, table, instances[i].tokens);
      if (p.label == instances[i].label) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(idx.size());
  };

  double best_acc = -1.0;
  for (int epoch = 1; epoch <= tcfg.epochs; ++epoch) {
    rng.shuffle(train_idx);
    double epoch_loss = 0.0;
    long n_batches = 0;
    for (std::size_t start = 0; start < train_idx.size();
         start += tcfg.minibatch) {
      std::size_t end = std::min(train_idx.size(),
                                 start + static_cast<std::size_t>(tcfg.minibatch));
      Batch batch;
      batch.dropout_p = tcfg.dropout;
      for (std::size_t i = start; i < end; ++i) {
        batch.items.push_back(&instances[train_idx[i]]);
        std::vector<int> mask(mcfg.n_filters);
        for (int& m : mask) m = rng.next_double() >= tcfg.dropout ? 1 : 0;
        batch.masks.push_back(std::move(mask));
      }
      auto [loss, grads] = loss_and_gradients(model, table, batch);
      adadelta_step(model, state, grads, tcfg.rho, tcfg.eps);
      result.batch_losses.push_back(loss);
      epoch_loss += loss;
      ++n_batches;
    }

    // empty validation split falls back to training accuracy
    double val_acc = accuracy_on(val_idx.empty() ? train_idx : val_idx);
    result.epochs.push_back(
        {epoch, n_batches ? epoch_loss / n_batches : 0.0, val_acc});
    if (val_acc > best_acc) {  // ties keep the earliest epoch
      best_acc = val_acc;
      result.model = model;
      result.best_epoch = epoch;
    }
  }
  return result;
}

Prediction predict(const ModelParams& model, const EmbeddingTable& table,
                   const std::vector<std::string>& tokens) {
  return forward(model, table, tokens);
}

void save_checkpoint(const std::string& path, const ModelParams& model,
                     const TrainConfig& tcfg, const std::string& fingerprint) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["config"] = {{"dim", model.cfg.dim},
                 {"n_filters", model.cfg.n_filters},
                 {"window", model.cfg.window},
                 {"n_classes", model.cfg.n_classes}};
  j["train"] = {{"minibatch", tcfg.minibatch}, {"dropout", tcfg.dropout},
                {"epochs", tcfg.epochs},       {"val_fraction", tcfg.val_fraction},
                {"rho", tcfg.rho},             {"eps", tcfg.eps},
                {"rng_seed", tcfg.rng_seed},   {"init_scale", tcfg.init_scale}};
  j["data_fingerprint"] = fingerprint;
  j["params"] = {{"conv_w", model.conv_w},
                 {"conv_b", model.conv_b},
                 {"soft_w", model.soft_w},
                 {"soft_b", model.soft_b}};
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << j.dump(2) << "\n";
}

ModelParams load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open checkpoint " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  ModelConfig cfg;
  cfg.dim = j.at("config").at("dim").get<int>();
  cfg.n_filters = j.at("config").at("n_filters").get<int>();
  cfg.window = j.at("config").at("window").get<int>();
  cfg.n_classes = j.at("config").at("n_classes").get<int>();
  ModelParams model = ModelParams::zeros(cfg);
  model.conv_w = j.at("params").at("conv_w").get<std::vector<double>>();
  model.conv_b = j.at("params").at("conv_b").get<std::vector<double>>();
  model.soft_w = j.at("params").at("soft_w").get<std::vector<double>>();
  model.soft_b = j.at("params").at("soft_b").get<std::vector<double>>();
  ModelParams ref = ModelParams::zeros(cfg);
  if (model.conv_w.size() != ref.conv_w.size() ||
      model.conv_b.size() != ref.conv_b.size() ||
      model.soft_w.size() != ref.soft_w.size() ||
      model.soft_b.size() != ref.soft_b.size())
    throw DataError(path + ": parameter shapes do not match config");
  return model;
}

}  // namespace tre
