#pragma once

#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "netzero/backend.hpp"
#include "netzero/dataset.hpp"
#include "netzero/errors.hpp"
#include "netzero/labels.hpp"
#include "netzero/metrics.hpp"

namespace netzero {

// Zero-shot classification prompt. The classified text sits between the ^^^
// markers; the model is asked to answer with exactly one of the three tokens.
inline constexpr std::string_view kZeroShotPromptTemplate =
    "Your task is to classify a provided text whether it contains claims "
    "about Reduction or Net Zero targets or none of them. \n"
    "\n"
    "Reduction targets are claims that refer to an absolute or relative "
    "reduction of emissions, often accompanied by a baseline year to which "
    "the reduction target is compared.\n"
    "Net zero targets represent a special case of reduction targets where an "
    "institution states to bring its emissions balance down to no additional "
    "net emissions by a certain year.\n"
    "If both targets appear in the text, the main focus of the text is "
    "decisive. For instance, most reduction targets serve as intermediary "
    "steps for the final goal of net zero. Thus, the focus lies on net "
    "zero.\n"
    "\n"
    "As an answer to the provided text, please only respond with 'Reduction' "
    "for reduction targets, 'Net Zero' for Net Zero targets or 'None' if no "
    "category applies.\n"
    "\n"
    "Provided text: ^^^{text}^^^ ";

inline std::string build_prompt(const std::string& text) {
  if (text.empty()) throw InputError("cannot build a prompt for empty text");
  std::string out(kZeroShotPromptTemplate);
  auto pos = out.find("{text}");
  out.replace(pos, 6, text);
  return out;
}

// Recovers the text between the ^^^ markers of a rendered prompt.
inline std::optional<std::string> text_from_prompt(const std::string& prompt) {
  auto start = prompt.find("^^^");
  if (start == std::string::npos) return std::nullopt;
  auto end = prompt.rfind("^^^");
  if (end <= start + 2) return std::nullopt;
  return prompt.substr(start + 3, end - start - 3);
}

enum class ParsedVerdict : int {
  NetZero = 0,
  Reduction = 1,
  None = 2,
  Unparseable = 3
};

struct LLMVerdict {
  std::string raw_response;
  ParsedVerdict parsed = ParsedVerdict::Unparseable;
};

namespace detail {

inline std::string fold_for_match(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isalpha(c)) {
      out.push_back(static_cast<char>(std::tolower(c)));
    } else if (std::isspace(c) || c == '-' || c == '_') {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
    } else {
      // punctuation acts as a word boundary
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

// Whole-word occurrence of needle inside the folded haystack.
inline bool contains_word(const std::string& folded, std::string_view needle) {
  size_t pos = 0;
  while ((pos = folded.find(needle, pos)) != std::string::npos) {
    bool left = pos == 0 || folded[pos - 1] == ' ';
    size_t after = pos + needle.size();
    bool right = after == folded.size() || folded[after] == ' ';
    if (left && right) return true;
    pos += 1;
  }
  return false;
}

}  // namespace detail

// Case-insensitive, punctuation-tolerant parse. A response containing exactly
// one of the three answer tokens maps to that label; anything else is
// UNPARSEABLE (which scores as incorrect, never as an error).
inline LLMVerdict parse_response(const std::string& raw) {
  LLMVerdict v;
  v.raw_response = raw;
  std::string folded = detail::fold_for_match(raw);
  bool nz = detail::contains_word(folded, "net zero");
  bool red = detail::contains_word(folded, "reduction");
  bool none = detail::contains_word(folded, "none");
  int hits = static_cast<int>(nz) + static_cast<int>(red) + static_cast<int>(none);
  if (hits == 1) {
    v.parsed = nz ? ParsedVerdict::NetZero
                  : red ? ParsedVerdict::Reduction : ParsedVerdict::None;
  }
  return v;
}

// --- chat client abstraction ------------------------------------------------

class ChatClient {
 public:
  virtual ~ChatClient() = default;
  // One chat completion for one prompt. Throws on transport failure.
  virtual std::string complete(const std::string& prompt) = 0;
  virtual std::string model_name() const = 0;
};

// Answers with the canonical token for the gold label of the embedded text.
class GoldEchoChatClient final : public ChatClient {
 public:
  explicit GoldEchoChatClient(const Dataset& ds) {
    for (const auto& s : ds) gold_[s.text] = s.label;
  }
  std::string complete(const std::string& prompt) override {
    auto text = text_from_prompt(prompt);
    if (!text) return "None";
    auto it = gold_.find(*text);
    if (it == gold_.end()) return "None";
    switch (it->second) {
      case TargetLabel::NetZero: return "Net Zero";
      case TargetLabel::Reduction: return "Reduction";
      case TargetLabel::None: return "None";
    }
    return "None";
  }
  std::string model_name() const override { return "mock:gold-echo"; }

 private:
  std::unordered_map<std::string, TargetLabel> gold_;
};

class ConstantChatClient final : public ChatClient {
 public:
  explicit ConstantChatClient(std::string answer) : answer_(std::move(answer)) {}
  std::string complete(const std::string&) override { return answer_; }
  std::string model_name() const override { return "mock:constant"; }

 private:
  std::string answer_;
};

// Throws on every call; used to prove cache replays never hit the network.
class UnreachableChatClient final : public ChatClient {
 public:
  explicit UnreachableChatClient(std::string model = "mock:unreachable")
      : model_(std::move(model)) {}
  std::string complete(const std::string&) override {
    throw IoError("unreachable client was called");
  }
  std::string model_name() const override { return model_; }

 private:
  std::string model_;
};

// Disk cache keyed by (model, prompt hash); reruns are free and offline
// tests replay cached fixtures.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  std::optional<std::string> get(const std::string& model,
                                 const std::string& prompt) const {
    std::ifstream is(path_for(model, prompt), std::ios::binary);
    if (!is) return std::nullopt;
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
  }

  void put(const std::string& model, const std::string& prompt,
           const std::string& response) const {
    std::ofstream os(path_for(model, prompt), std::ios::binary);
    if (!os) throw IoError("cannot write response cache entry");
    os << response;
  }

 private:
  std::filesystem::path path_for(const std::string& model,
                                 const std::string& prompt) const {
    uint64_t h = detail::fnv1a64(prompt, detail::fnv1a64(model));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return dir_ / (std::string(buf) + ".txt");
  }

  std::filesystem::path dir_;
};

class CachingChatClient final : public ChatClient {
 public:
  CachingChatClient(ChatClient& inner, ResponseCache cache)
      : inner_(inner), cache_(std::move(cache)) {}
  std::string complete(const std::string& prompt) override {
    if (auto hit = cache_.get(inner_.model_name(), prompt)) return *hit;
    std::string r = inner_.complete(prompt);
    cache_.put(inner_.model_name(), prompt, r);
    return r;
  }
  std::string model_name() const override { return inner_.model_name(); }

 private:
  ChatClient& inner_;
  ResponseCache cache_;
};

// --- evaluation -------------------------------------------------------------

struct ZeroShotResult {
  FoldMetrics metrics;
  // rows: 3 gold labels; cols: 3 predicted labels + UNPARSEABLE bucket
  ConfusionMatrix confusion{3, 4};
  std::vector<LLMVerdict> verdicts;  // one per sample, input order
  size_t unparseable = 0;
};

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{250};
};

inline LLMVerdict classify_with_retries(ChatClient& client, const std::string& text,
                                        const RetryPolicy& retry) {
  auto prompt = build_prompt(text);
  auto backoff = retry.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      return parse_response(client.complete(prompt));
    } catch (const std::exception& e) {
      if (attempt >= retry.attempts) {
        LLMVerdict v;
        v.raw_response = std::string("<transport error: ") + e.what() + ">";
        v.parsed = ParsedVerdict::Unparseable;
        return v;
      }
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
}

// Scores the whole dataset zero-shot. UNPARSEABLE answers count as incorrect.
// Metrics are macro-averaged over the three gold classes, as in the
// cross-validation harness.
inline ZeroShotResult evaluate_zero_shot(const Dataset& ds, ChatClient& client,
                                         const RetryPolicy& retry = {}) {
  if (ds.empty()) throw EmptyDatasetError();
  ZeroShotResult r;
  for (const auto& s : ds) {
    auto v = classify_with_retries(client, s.text, retry);
    r.confusion.add(static_cast<size_t>(s.label), static_cast<size_t>(v.parsed));
    if (v.parsed == ParsedVerdict::Unparseable) ++r.unparseable;
    r.verdicts.push_back(std::move(v));
  }
  r.metrics = metrics_from_confusion(r.confusion);
  return r;
}

}  // namespace netzero
