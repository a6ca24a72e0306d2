#pragma once

#include <iomanip>
#include <memory>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "netzero/backend.hpp"
#include "netzero/dataset.hpp"
#include "netzero/kfold.hpp"
#include "netzero/metrics.hpp"

namespace netzero {

inline std::vector<Example> to_examples(const Dataset& ds) {
  std::vector<Example> out;
  out.reserve(ds.size());
  for (const auto& s : ds) out.push_back({s.text, static_cast<int>(s.label)});
  return out;
}

inline std::vector<Example> to_examples(const BinaryDataset& ds) {
  std::vector<Example> out;
  out.reserve(ds.size());
  for (const auto& s : ds) out.push_back({s.text, static_cast<int>(s.label)});
  return out;
}

inline std::unique_ptr<TextClassifier> fine_tune(std::span<const Example> train_set,
                                                 std::span<const Example> val_set,
                                                 const ClassifierConfig& config,
                                                 ClassifierBackend& backend) {
  config.validate();
  return backend.train(train_set, val_set, config);
}

// Typed entry points: the dataset kind fixes the label space, so a
// num_labels mismatch is a configuration error, not silent truncation.
inline std::unique_ptr<TextClassifier> fine_tune(const Dataset& train_set,
                                                 const Dataset& val_set,
                                                 const ClassifierConfig& config,
                                                 ClassifierBackend& backend) {
  if (config.num_labels != 3)
    throw ConfigError("3-class dataset but num_labels=" +
                      std::to_string(config.num_labels));
  return fine_tune(std::span<const Example>(to_examples(train_set)),
                   to_examples(val_set), config, backend);
}

inline std::unique_ptr<TextClassifier> fine_tune(const BinaryDataset& train_set,
                                                 const BinaryDataset& val_set,
                                                 const ClassifierConfig& config,
                                                 ClassifierBackend& backend) {
  if (config.num_labels != 2)
    throw ConfigError("binary dataset but num_labels=" +
                      std::to_string(config.num_labels));
  return fine_tune(std::span<const Example>(to_examples(train_set)),
                   to_examples(val_set), config, backend);
}

inline std::vector<Prediction> predict(const TextClassifier& model,
                                       std::span<const std::string> texts) {
  return model.predict(texts);
}

// One validated sample: where it was scored and what came out.
struct PerSamplePrediction {
  size_t index = 0;  // position in the input dataset
  int fold = 0;
  int gold = 0;
  int predicted = 0;
};

struct CVReport {
  std::vector<FoldMetrics> per_fold;
  MeanStd accuracy, f1, precision, recall;
  ConfusionMatrix confusion;  // pooled over validation folds
  std::vector<std::string> label_names;
  std::vector<PerSamplePrediction> per_sample;
  bool has_per_sample = false;
};

inline uint64_t derive_fold_seed(uint64_t master, int fold) {
  // splitmix64 step keeps fold seeds decorrelated
  uint64_t z = master + 0x9e3779b97f4a7c15ull * static_cast<uint64_t>(fold + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline CVReport cross_validate(std::span<const Example> examples,
                               const ClassifierConfig& config,
                               ClassifierBackend& backend, int k = 5,
                               bool keep_per_sample = true,
                               Averaging avg = Averaging::Macro) {
  config.validate();
  std::vector<int> labels;
  labels.reserve(examples.size());
  for (const auto& e : examples) labels.push_back(e.label);
  auto folds = stratified_kfold(labels, k, config.seed);

  CVReport report;
  report.label_names = config.effective_label_names();
  report.confusion = ConfusionMatrix(static_cast<size_t>(config.num_labels));
  report.has_per_sample = keep_per_sample;

  for (int f = 0; f < k; ++f) {
    std::vector<Example> train_set, val_set;
    for (size_t i : folds[f].train) train_set.push_back(examples[i]);
    for (size_t i : folds[f].val) val_set.push_back(examples[i]);

    ClassifierConfig fold_cfg = config;
    fold_cfg.seed = derive_fold_seed(config.seed, f);
    auto model = backend.train(train_set, val_set, fold_cfg);

    std::vector<std::string> texts;
    texts.reserve(val_set.size());
    for (const auto& e : val_set) texts.push_back(e.text);
    auto preds = model->predict(texts);

    ConfusionMatrix cm(static_cast<size_t>(config.num_labels));
    for (size_t i = 0; i < val_set.size(); ++i) {
      cm.add(static_cast<size_t>(val_set[i].label),
             static_cast<size_t>(preds[i].label));
      if (keep_per_sample)
        report.per_sample.push_back(
            {folds[f].val[i], f, val_set[i].label, preds[i].label});
    }
    report.per_fold.push_back(metrics_from_confusion(cm, avg));
    report.confusion += cm;
  }

  auto collect = [&](auto getter) {
    std::vector<double> v;
    for (const auto& m : report.per_fold) v.push_back(getter(m));
    return mean_std(v);
  };
  report.accuracy = collect([](const FoldMetrics& m) { return m.accuracy; });
  report.f1 = collect([](const FoldMetrics& m) { return m.f1; });
  report.precision = collect([](const FoldMetrics& m) { return m.precision; });
  report.recall = collect([](const FoldMetrics& m) { return m.recall; });
  return report;
}

inline CVReport cross_validate(const Dataset& ds, const ClassifierConfig& config,
                               ClassifierBackend& backend, int k = 5) {
  if (config.num_labels != 3)
    throw ConfigError("3-class dataset but num_labels=" +
                      std::to_string(config.num_labels));
  auto ex = to_examples(ds);
  return cross_validate(ex, config, backend, k);
}

inline CVReport cross_validate(const BinaryDataset& ds,
                               const ClassifierConfig& config,
                               ClassifierBackend& backend, int k = 5) {
  if (config.num_labels != 2)
    throw ConfigError("binary dataset but num_labels=" +
                      std::to_string(config.num_labels));
  auto ex = to_examples(ds);
  return cross_validate(ex, config, backend, k);
}

inline void write_cv_report(const CVReport& r, std::ostream& os) {
  os << std::fixed << std::setprecision(4);
  os << "metric\tmean\tstd\n";
  os << "accuracy\t" << r.accuracy.mean << '\t' << r.accuracy.std << '\n';
  os << "f1\t" << r.f1.mean << '\t' << r.f1.std << '\n';
  os << "precision\t" << r.precision.mean << '\t' << r.precision.std << '\n';
  os << "recall\t" << r.recall.mean << '\t' << r.recall.std << '\n';
  os << '\n';
  os << "fold\taccuracy\tf1\tprecision\trecall\n";
  for (size_t f = 0; f < r.per_fold.size(); ++f) {
    const auto& m = r.per_fold[f];
    os << f << '\t' << m.accuracy << '\t' << m.f1 << '\t' << m.precision << '\t'
       << m.recall << '\n';
  }
  os << '\n';
  print_confusion(r.confusion, r.label_names, r.label_names, os);
}

// --- grid search ------------------------------------------------------------

struct GridAxes {
  std::vector<double> learning_rates;
  std::vector<int> epochs;
  std::vector<int> batch_sizes;

  size_t cells() const {
    return learning_rates.size() * epochs.size() * batch_sizes.size();
  }
};

struct GridResult {
  std::string base_model_id;
  double learning_rate = 0;
  int epochs = 0;
  int batch_size = 0;
  MeanStd accuracy;
};

inline std::vector<GridResult> grid_search(std::span<const Example> examples,
                                           const GridAxes& grid,
                                           const std::vector<std::string>& bases,
                                           const ClassifierConfig& base_config,
                                           int k = 5) {
  if (grid.cells() == 0 || bases.empty())
    throw ConfigError("grid search requires a non-empty grid and base list");
  std::vector<GridResult> out;
  for (const auto& base : bases) {
    auto backend = make_backend(base);
    for (double lr : grid.learning_rates) {
      for (int ep : grid.epochs) {
        for (int bs : grid.batch_sizes) {
          ClassifierConfig cfg = base_config;
          cfg.base_model_id = base;
          cfg.learning_rate = lr;
          cfg.epochs = ep;
          cfg.batch_size = bs;
          auto report = cross_validate(examples, cfg, *backend, k, false);
          out.push_back({base, lr, ep, bs, report.accuracy});
        }
      }
    }
  }
  return out;
}

inline void write_grid_report(const std::vector<GridResult>& rows, std::ostream& os) {
  os << "base_model\tlearning_rate\tepochs\tbatch_size\taccuracy_mean\taccuracy_std\n";
  os << std::setprecision(10);
  for (const auto& r : rows) {
    os << r.base_model_id << '\t' << r.learning_rate << '\t' << r.epochs << '\t'
       << r.batch_size << '\t' << std::fixed << std::setprecision(4)
       << r.accuracy.mean << '\t' << r.accuracy.std << '\n'
       << std::defaultfloat << std::setprecision(10);
  }
}

}  // namespace netzero
