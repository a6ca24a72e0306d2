#pragma once

#include <string>
#include <vector>

#include "netzero/backend.hpp"

namespace netzero {

namespace rules_detail {

inline std::string lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

inline bool contains_any(const std::string& lower_text,
                         std::initializer_list<const char*> needles) {
  for (const char* n : needles)
    if (lower_text.find(n) != std::string::npos) return true;
  return false;
}

}  // namespace rules_detail

// Keyword classifier for climate relevance. Label 0 = climate, 1 = other.
// Deterministic stand-in for the neural climate detector; same interface.
class RuleClimateClassifier final : public TextClassifier {
 public:
  std::vector<Prediction> predict(std::span<const std::string> texts) const override {
    std::vector<Prediction> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
      std::string l = rules_detail::lower(t);
      bool climate = rules_detail::contains_any(
          l, {"climate", "emission", "carbon", "net zero", "net-zero",
              "greenhouse", "ghg", "co2", "decarbon", "renewable",
              "sustainab", "warming"});
      Prediction p;
      p.label = climate ? 0 : 1;
      p.probabilities = climate ? std::vector<double>{0.95, 0.05}
                                : std::vector<double>{0.05, 0.95};
      out.push_back(std::move(p));
    }
    return out;
  }
  int num_labels() const override { return 2; }
  std::vector<std::string> label_names() const override {
    return {"CLIMATE", "OTHER"};
  }
  void save(const std::filesystem::path&) const override {
    throw ConfigError("rule models have no weights to save");
  }
};

// Keyword classifier for the 3-class target task, fixed label order
// NET_ZERO, REDUCTION, NONE. Net zero wins when both patterns appear.
class RuleTargetClassifier final : public TextClassifier {
 public:
  std::vector<Prediction> predict(std::span<const std::string> texts) const override {
    std::vector<Prediction> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
      std::string l = rules_detail::lower(t);
      bool nz = rules_detail::contains_any(
          l, {"net zero", "net-zero", "carbon neutral", "climate neutral",
              "neutrality", "net negative", "zero carbon"});
      bool red = rules_detail::contains_any(
                     l, {"reduc", "cut", "lower", "decrease", "halve"}) &&
                 rules_detail::contains_any(
                     l, {"emission", "carbon", "co2", "ghg", "footprint"});
      int label = nz ? 0 : red ? 1 : 2;
      Prediction p;
      p.label = label;
      p.probabilities.assign(3, 0.04);
      p.probabilities[static_cast<size_t>(label)] = 0.92;
      out.push_back(std::move(p));
    }
    return out;
  }
  int num_labels() const override { return 3; }
  std::vector<std::string> label_names() const override {
    return {"NET_ZERO", "REDUCTION", "NONE"};
  }
  void save(const std::filesystem::path&) const override {
    throw ConfigError("rule models have no weights to save");
  }
};

}  // namespace netzero
