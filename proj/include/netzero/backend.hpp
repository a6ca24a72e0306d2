#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "netzero/errors.hpp"
#include "netzero/labels.hpp"

namespace netzero {

// One training/evaluation example for a sequence classifier.
struct Example {
  std::string text;
  int label = 0;
};

struct ClassifierConfig {
  std::string base_model_id = "linear-bow";
  int num_labels = 3;
  int epochs = 10;
  int batch_size = 32;
  int grad_accumulation = 2;
  double warmup_ratio = 0.1;
  double learning_rate = 5e-5;
  int patience = 5;
  uint64_t seed = 42;
  std::vector<std::string> label_names;  // defaulted from num_labels if empty

  void validate() const {
    if (num_labels < 2) throw ConfigError("num_labels must be >= 2");
    if (epochs < 1) throw ConfigError("epochs must be >= 1");
    if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
    if (grad_accumulation < 1) throw ConfigError("grad_accumulation must be >= 1");
    if (warmup_ratio < 0 || warmup_ratio >= 1)
      throw ConfigError("warmup_ratio must be in [0, 1)");
    if (learning_rate <= 0) throw ConfigError("learning_rate must be > 0");
    if (patience < 0) throw ConfigError("patience must be >= 0");
  }

  std::vector<std::string> effective_label_names() const {
    if (!label_names.empty()) return label_names;
    if (num_labels == 3) return {"NET_ZERO", "REDUCTION", "NONE"};
    if (num_labels == 2) return {"TARGET", "NONE"};
    std::vector<std::string> out;
    for (int i = 0; i < num_labels; ++i) out.push_back("LABEL_" + std::to_string(i));
    return out;
  }
};

inline void to_json(nlohmann::json& j, const ClassifierConfig& c) {
  j = {{"base_model_id", c.base_model_id},
       {"num_labels", c.num_labels},
       {"epochs", c.epochs},
       {"batch_size", c.batch_size},
       {"grad_accumulation", c.grad_accumulation},
       {"warmup_ratio", c.warmup_ratio},
       {"learning_rate", c.learning_rate},
       {"patience", c.patience},
       {"seed", c.seed},
       {"label_names", c.label_names}};
}

inline void from_json(const nlohmann::json& j, ClassifierConfig& c) {
  j.at("base_model_id").get_to(c.base_model_id);
  j.at("num_labels").get_to(c.num_labels);
  j.at("epochs").get_to(c.epochs);
  j.at("batch_size").get_to(c.batch_size);
  j.at("grad_accumulation").get_to(c.grad_accumulation);
  j.at("warmup_ratio").get_to(c.warmup_ratio);
  j.at("learning_rate").get_to(c.learning_rate);
  j.at("patience").get_to(c.patience);
  j.at("seed").get_to(c.seed);
  if (j.contains("label_names")) j.at("label_names").get_to(c.label_names);
}

struct Prediction {
  int label = 0;  // argmax of probabilities, ties broken by lowest index
  std::vector<double> probabilities;
};

inline int argmax_label(std::span<const double> probs) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(probs.size()); ++i)
    if (probs[i] > probs[best]) best = i;
  return best;
}

// A trained model. Prediction is read-only and callable concurrently.
class TextClassifier {
 public:
  virtual ~TextClassifier() = default;
  virtual std::vector<Prediction> predict(std::span<const std::string> texts) const = 0;
  virtual int num_labels() const = 0;
  virtual std::vector<std::string> label_names() const = 0;
  virtual void save(const std::filesystem::path& dir) const = 0;
};

// Trains sequence classifiers; the cross-validation harness is agnostic to
// what sits behind this interface.
class ClassifierBackend {
 public:
  virtual ~ClassifierBackend() = default;
  virtual std::string name() const = 0;
  virtual std::unique_ptr<TextClassifier> train(std::span<const Example> train_set,
                                                std::span<const Example> val_set,
                                                const ClassifierConfig& config) = 0;
  virtual std::unique_ptr<TextClassifier> load(const std::filesystem::path& dir) = 0;
};

// --- feature hashing --------------------------------------------------------

namespace detail {

inline uint64_t fnv1a64(std::string_view s, uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::vector<std::string> lowercase_tokens(std::string_view text) {
  std::vector<std::string> toks;
  std::string cur;
  for (char ch : text) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c == '%') {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      toks.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) toks.push_back(std::move(cur));
  return toks;
}

// Hashed unigram + bigram counts, L2-normalized.
inline std::vector<std::pair<uint32_t, float>> hash_features(std::string_view text,
                                                             uint32_t dim) {
  auto toks = lowercase_tokens(text);
  std::unordered_map<uint32_t, float> acc;
  for (size_t i = 0; i < toks.size(); ++i) {
    acc[static_cast<uint32_t>(fnv1a64(toks[i]) % dim)] += 1.0f;
    if (i + 1 < toks.size())
      acc[static_cast<uint32_t>(fnv1a64(toks[i] + "\x1f" + toks[i + 1]) % dim)] += 1.0f;
  }
  double norm = 0;
  for (const auto& [k, v] : acc) norm += static_cast<double>(v) * v;
  norm = norm > 0 ? std::sqrt(norm) : 1.0;
  std::vector<std::pair<uint32_t, float>> out(acc.begin(), acc.end());
  std::sort(out.begin(), out.end());
  for (auto& [k, v] : out) v = static_cast<float>(v / norm);
  return out;
}

inline std::vector<double> softmax(const std::vector<double>& z) {
  double mx = *std::max_element(z.begin(), z.end());
  std::vector<double> p(z.size());
  double sum = 0;
  for (size_t i = 0; i < z.size(); ++i) {
    p[i] = std::exp(z[i] - mx);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

}  // namespace detail

// --- linear bag-of-words backend -------------------------------------------

// Multinomial logistic regression over hashed unigram/bigram features,
// trained with minibatch SGD, linear warmup/decay and early stopping on
// validation accuracy. Deterministic for a fixed seed.
class LinearBowClassifier final : public TextClassifier {
 public:
  LinearBowClassifier(uint32_t dim, std::vector<std::string> labels)
      : dim_(dim),
        labels_(std::move(labels)),
        weights_(static_cast<size_t>(dim) * labels_.size(), 0.0f),
        bias_(labels_.size(), 0.0f) {}

  std::vector<Prediction> predict(std::span<const std::string> texts) const override {
    std::vector<Prediction> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
      auto probs = detail::softmax(logits(detail::hash_features(t, dim_)));
      Prediction p;
      p.label = argmax_label(probs);
      p.probabilities = std::move(probs);
      out.push_back(std::move(p));
    }
    return out;
  }

  int num_labels() const override { return static_cast<int>(labels_.size()); }
  std::vector<std::string> label_names() const override { return labels_; }

  void save(const std::filesystem::path& dir) const override {
    std::filesystem::create_directories(dir);
    nlohmann::json meta = {{"backend", "linear-bow"},
                           {"dim", dim_},
                           {"label_names", labels_}};
    std::ofstream(dir / "model.json") << meta.dump(2) << '\n';
    std::ofstream os(dir / "weights.bin", std::ios::binary);
    if (!os) throw IoError("cannot write weights: " + (dir / "weights.bin").string());
    os.write(reinterpret_cast<const char*>(weights_.data()),
             static_cast<std::streamsize>(weights_.size() * sizeof(float)));
    os.write(reinterpret_cast<const char*>(bias_.data()),
             static_cast<std::streamsize>(bias_.size() * sizeof(float)));
  }

  static std::unique_ptr<LinearBowClassifier> load(const std::filesystem::path& dir) {
    std::ifstream ms(dir / "model.json");
    if (!ms) throw ModelNotFoundError("no model.json in " + dir.string());
    nlohmann::json meta = nlohmann::json::parse(ms);
    auto m = std::make_unique<LinearBowClassifier>(
        meta.at("dim").get<uint32_t>(),
        meta.at("label_names").get<std::vector<std::string>>());
    std::ifstream ws(dir / "weights.bin", std::ios::binary);
    if (!ws) throw ModelNotFoundError("no weights.bin in " + dir.string());
    ws.read(reinterpret_cast<char*>(m->weights_.data()),
            static_cast<std::streamsize>(m->weights_.size() * sizeof(float)));
    ws.read(reinterpret_cast<char*>(m->bias_.data()),
            static_cast<std::streamsize>(m->bias_.size() * sizeof(float)));
    if (!ws) throw IoError("truncated weights.bin in " + dir.string());
    return m;
  }

  float& weight(int label, uint32_t feature) {
    return weights_[static_cast<size_t>(label) * dim_ + feature];
  }
  float weight(int label, uint32_t feature) const {
    return weights_[static_cast<size_t>(label) * dim_ + feature];
  }
  float& bias(int label) { return bias_[static_cast<size_t>(label)]; }
  uint32_t dim() const { return dim_; }

  std::vector<double> logits(const std::vector<std::pair<uint32_t, float>>& feats) const {
    std::vector<double> z(bias_.begin(), bias_.end());
    for (const auto& [f, v] : feats)
      for (size_t l = 0; l < labels_.size(); ++l)
        z[l] += static_cast<double>(weight(static_cast<int>(l), f)) * v;
    return z;
  }

 private:
  uint32_t dim_;
  std::vector<std::string> labels_;
  std::vector<float> weights_;  // [label][feature]
  std::vector<float> bias_;
};

class LinearBowBackend final : public ClassifierBackend {
 public:
  explicit LinearBowBackend(uint32_t dim = 1u << 16) : dim_(dim) {}

  std::string name() const override { return "linear-bow"; }

  std::unique_ptr<TextClassifier> train(std::span<const Example> train_set,
                                        std::span<const Example> val_set,
                                        const ClassifierConfig& config) override {
    config.validate();
    check_labels(train_set, config.num_labels);
    check_labels(val_set, config.num_labels);
    if (train_set.empty()) throw ConfigError("empty training set");

    auto labels = config.effective_label_names();
    auto model = std::make_unique<LinearBowClassifier>(dim_, labels);
    const int L = config.num_labels;

    std::vector<std::vector<std::pair<uint32_t, float>>> feats;
    feats.reserve(train_set.size());
    for (const auto& e : train_set) feats.push_back(detail::hash_features(e.text, dim_));

    const size_t n = train_set.size();
    const size_t micro = static_cast<size_t>(config.batch_size);
    const size_t micro_per_epoch = (n + micro - 1) / micro;
    const size_t steps_per_epoch =
        (micro_per_epoch + config.grad_accumulation - 1) / config.grad_accumulation;
    const size_t total_steps = steps_per_epoch * static_cast<size_t>(config.epochs);
    const size_t warmup_steps =
        static_cast<size_t>(config.warmup_ratio * static_cast<double>(total_steps));
    // Configured learning rates (5e-5 range) assume transformer fine-tuning;
    // scale up for a linear model so the same config trains both.
    const double base_lr = config.learning_rate * lr_scale_;

    std::mt19937_64 rng(config.seed);
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;

    std::unordered_map<uint32_t, std::vector<double>> grad;  // feature -> per-label
    std::vector<double> grad_bias(static_cast<size_t>(L), 0.0);
    size_t step = 0, micro_in_step = 0;

    double best_val = -1.0;
    int since_best = 0;
    std::vector<float> best_snapshot;
    auto snapshot = [&] {
      best_snapshot.clear();
      for (int l = 0; l < L; ++l) {
        for (uint32_t f = 0; f < dim_; ++f) best_snapshot.push_back(model->weight(l, f));
        best_snapshot.push_back(model->bias(l));
      }
    };

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      for (size_t b = 0; b < n; b += micro) {
        size_t end = std::min(b + micro, n);
        for (size_t i = b; i < end; ++i) {
          const auto& fs = feats[order[i]];
          auto p = detail::softmax(model->logits(fs));
          int gold = train_set[order[i]].label;
          for (int l = 0; l < L; ++l) {
            double g = p[static_cast<size_t>(l)] - (l == gold ? 1.0 : 0.0);
            grad_bias[static_cast<size_t>(l)] += g;
            for (const auto& [f, v] : fs) {
              auto& slot = grad[f];
              if (slot.empty()) slot.assign(static_cast<size_t>(L), 0.0);
              slot[static_cast<size_t>(l)] += g * v;
            }
          }
        }
        if (++micro_in_step >= static_cast<size_t>(config.grad_accumulation) ||
            b + micro >= n) {
          double lr = schedule(base_lr, step, warmup_steps, total_steps);
          double scale = lr / static_cast<double>(micro * micro_in_step);
          for (auto& [f, gv] : grad) {
            for (int l = 0; l < L; ++l) {
              model->weight(l, f) -= static_cast<float>(scale * gv[static_cast<size_t>(l)]);
              gv[static_cast<size_t>(l)] = 0.0;
            }
          }
          for (int l = 0; l < L; ++l) {
            model->bias(l) -= static_cast<float>(scale * grad_bias[static_cast<size_t>(l)]);
            grad_bias[static_cast<size_t>(l)] = 0.0;
          }
          grad.clear();
          micro_in_step = 0;
          ++step;
        }
      }

      double val_acc = val_set.empty() ? 1.0 : accuracy(*model, val_set);
      if (val_acc > best_val) {
        best_val = val_acc;
        since_best = 0;
        snapshot();
      } else if (++since_best >= config.patience && config.patience > 0) {
        break;
      }
    }

    // restore best-validation checkpoint
    if (!best_snapshot.empty()) {
      size_t i = 0;
      for (int l = 0; l < L; ++l) {
        for (uint32_t f = 0; f < dim_; ++f) model->weight(l, f) = best_snapshot[i++];
        model->bias(l) = best_snapshot[i++];
      }
    }
    return model;
  }

  std::unique_ptr<TextClassifier> load(const std::filesystem::path& dir) override {
    return LinearBowClassifier::load(dir);
  }

 private:
  static void check_labels(std::span<const Example> set, int num_labels) {
    for (const auto& e : set)
      if (e.label < 0 || e.label >= num_labels)
        throw ConfigError("label " + std::to_string(e.label) +
                          " out of range for num_labels=" + std::to_string(num_labels));
  }

  static double schedule(double base, size_t step, size_t warmup, size_t total) {
    if (warmup > 0 && step < warmup)
      return base * static_cast<double>(step + 1) / static_cast<double>(warmup);
    if (total <= warmup) return base;
    double frac = static_cast<double>(step - warmup) / static_cast<double>(total - warmup);
    return base * std::max(0.05, 1.0 - frac);
  }

  static double accuracy(const TextClassifier& m, std::span<const Example> set) {
    std::vector<std::string> texts;
    texts.reserve(set.size());
    for (const auto& e : set) texts.push_back(e.text);
    auto preds = m.predict(texts);
    size_t ok = 0;
    for (size_t i = 0; i < set.size(); ++i)
      if (preds[i].label == set[i].label) ++ok;
    return static_cast<double>(ok) / static_cast<double>(set.size());
  }

  uint32_t dim_;
  double lr_scale_ = 2.0e4;  // maps 5e-5 to an SGD-appropriate 1.0
};

// --- stub backends ----------------------------------------------------------

// Memorizes gold labels of everything it saw at train time and echoes them at
// prediction time. Harness-correctness oracle: metrics must be exactly 1.0.
class GoldEchoClassifier final : public TextClassifier {
 public:
  GoldEchoClassifier(std::unordered_map<std::string, int> gold,
                     std::vector<std::string> labels)
      : gold_(std::move(gold)), labels_(std::move(labels)) {}

  std::vector<Prediction> predict(std::span<const std::string> texts) const override {
    std::vector<Prediction> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
      auto it = gold_.find(t);
      int label = it != gold_.end() ? it->second : 0;
      Prediction p;
      p.label = label;
      p.probabilities.assign(labels_.size(), 0.0);
      p.probabilities[static_cast<size_t>(label)] = 1.0;
      out.push_back(std::move(p));
    }
    return out;
  }
  int num_labels() const override { return static_cast<int>(labels_.size()); }
  std::vector<std::string> label_names() const override { return labels_; }
  void save(const std::filesystem::path&) const override {
    throw ConfigError("stub models cannot be saved");
  }

 private:
  std::unordered_map<std::string, int> gold_;
  std::vector<std::string> labels_;
};

class GoldEchoBackend final : public ClassifierBackend {
 public:
  std::string name() const override { return "stub:gold-echo"; }
  std::unique_ptr<TextClassifier> train(std::span<const Example> train_set,
                                        std::span<const Example> val_set,
                                        const ClassifierConfig& config) override {
    config.validate();
    std::unordered_map<std::string, int> gold;
    for (const auto& e : train_set) gold[e.text] = e.label;
    for (const auto& e : val_set) gold[e.text] = e.label;
    return std::make_unique<GoldEchoClassifier>(std::move(gold),
                                                config.effective_label_names());
  }
  std::unique_ptr<TextClassifier> load(const std::filesystem::path& dir) override {
    throw ModelNotFoundError("stub backend cannot load from " + dir.string());
  }
};

class ConstantClassifier final : public TextClassifier {
 public:
  ConstantClassifier(int label, std::vector<std::string> labels)
      : label_(label), labels_(std::move(labels)) {}
  std::vector<Prediction> predict(std::span<const std::string> texts) const override {
    Prediction p;
    p.label = label_;
    p.probabilities.assign(labels_.size(), 0.0);
    p.probabilities[static_cast<size_t>(label_)] = 1.0;
    return std::vector<Prediction>(texts.size(), p);
  }
  int num_labels() const override { return static_cast<int>(labels_.size()); }
  std::vector<std::string> label_names() const override { return labels_; }
  void save(const std::filesystem::path&) const override {
    throw ConfigError("stub models cannot be saved");
  }

 private:
  int label_;
  std::vector<std::string> labels_;
};

class ConstantBackend final : public ClassifierBackend {
 public:
  explicit ConstantBackend(int label) : label_(label) {}
  std::string name() const override {
    return "stub:constant:" + std::to_string(label_);
  }
  std::unique_ptr<TextClassifier> train(std::span<const Example>,
                                        std::span<const Example>,
                                        const ClassifierConfig& config) override {
    config.validate();
    if (label_ < 0 || label_ >= config.num_labels)
      throw ConfigError("constant label out of range");
    return std::make_unique<ConstantClassifier>(label_, config.effective_label_names());
  }
  std::unique_ptr<TextClassifier> load(const std::filesystem::path& dir) override {
    throw ModelNotFoundError("stub backend cannot load from " + dir.string());
  }

 private:
  int label_;
};

// Resolves a base-model id to a backend. Transformer-family ids would be
// served by an external runtime; only ids known here resolve.
inline std::unique_ptr<ClassifierBackend> make_backend(const std::string& base_model_id) {
  if (base_model_id == "linear-bow" || base_model_id.starts_with("linear-bow:"))
    return std::make_unique<LinearBowBackend>();
  if (base_model_id == "stub:gold-echo") return std::make_unique<GoldEchoBackend>();
  if (base_model_id.starts_with("stub:constant:"))
    return std::make_unique<ConstantBackend>(
        std::stoi(base_model_id.substr(std::string("stub:constant:").size())));
  throw ModelNotFoundError("no backend can serve base model '" + base_model_id + "'");
}

}  // namespace netzero
