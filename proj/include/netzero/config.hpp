#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "netzero/backend.hpp"
#include "netzero/errors.hpp"

namespace netzero {

// Run configuration, one JSON file per run. Secrets never live in the file:
// the API key is read from the environment at use time.
struct RunConfig {
  std::filesystem::path dataset_path;
  std::filesystem::path corpus_dir;
  std::filesystem::path model_dir;
  std::filesystem::path output_dir = "out";

  ClassifierConfig classifier;
  std::vector<double> thresholds;

  // llm client
  std::string llm_endpoint = "https://api.openai.com";
  std::string llm_model = "gpt-3.5-turbo";
  std::string api_key_env = "OPENAI_API_KEY";
  std::filesystem::path cache_dir;

  int folds = 5;
  bool with_plot = true;

  std::string api_key() const {
    const char* v = std::getenv(api_key_env.c_str());
    return v ? v : "";
  }
};

inline RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config: " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is, nullptr, true, true);  // allow comments
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad config " + path.string() + ": " + e.what());
  }

  RunConfig cfg;
  auto get_path = [&](const char* key, std::filesystem::path& out) {
    if (j.contains(key)) out = j.at(key).get<std::string>();
  };
  get_path("dataset_path", cfg.dataset_path);
  get_path("corpus_dir", cfg.corpus_dir);
  get_path("model_dir", cfg.model_dir);
  get_path("output_dir", cfg.output_dir);
  get_path("cache_dir", cfg.cache_dir);

  if (j.contains("classifier")) {
    const auto& c = j.at("classifier");
    auto& cc = cfg.classifier;
    try {
      if (c.contains("base_model_id")) c.at("base_model_id").get_to(cc.base_model_id);
      if (c.contains("num_labels")) c.at("num_labels").get_to(cc.num_labels);
      if (c.contains("epochs")) c.at("epochs").get_to(cc.epochs);
      if (c.contains("batch_size")) c.at("batch_size").get_to(cc.batch_size);
      if (c.contains("grad_accumulation")) c.at("grad_accumulation").get_to(cc.grad_accumulation);
      if (c.contains("warmup_ratio")) c.at("warmup_ratio").get_to(cc.warmup_ratio);
      if (c.contains("learning_rate")) c.at("learning_rate").get_to(cc.learning_rate);
      if (c.contains("patience")) c.at("patience").get_to(cc.patience);
      if (c.contains("seed")) c.at("seed").get_to(cc.seed);
      if (c.contains("label_names")) c.at("label_names").get_to(cc.label_names);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("bad classifier section: " + std::string(e.what()));
    }
    cc.validate();
  }

  if (j.contains("thresholds")) {
    for (const auto& t : j.at("thresholds")) {
      double v = t.get<double>();
      if (v < 0.0 || v > 1.0) throw ConfigError("threshold out of [0,1]");
      cfg.thresholds.push_back(v);
    }
  }

  if (j.contains("llm_endpoint")) j.at("llm_endpoint").get_to(cfg.llm_endpoint);
  if (j.contains("llm_model")) j.at("llm_model").get_to(cfg.llm_model);
  if (j.contains("api_key_env")) j.at("api_key_env").get_to(cfg.api_key_env);
  if (j.contains("folds")) {
    j.at("folds").get_to(cfg.folds);
    if (cfg.folds < 2) throw ConfigError("folds must be >= 2");
  }
  if (j.contains("with_plot")) j.at("with_plot").get_to(cfg.with_plot);
  return cfg;
}

// Fail before doing any work if a referenced input is absent.
inline void require_file(const std::filesystem::path& p, const char* what) {
  if (p.empty()) throw ConfigError(std::string(what) + " not set in config");
  if (!std::filesystem::is_regular_file(p))
    throw ConfigError(std::string(what) + " not found: " + p.string());
}

inline void require_dir(const std::filesystem::path& p, const char* what) {
  if (p.empty()) throw ConfigError(std::string(what) + " not set in config");
  if (!std::filesystem::is_directory(p))
    throw ConfigError(std::string(what) + " not found: " + p.string());
}

}  // namespace netzero
