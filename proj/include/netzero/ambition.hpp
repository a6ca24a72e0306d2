#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "netzero/errors.hpp"

namespace netzero {

enum class AmbitionDimension : int {
  NzTargetYear = 0,
  RedTargetYear = 1,
  RedBaseYear = 2,
  RedPercentage = 3
};

inline constexpr std::array<AmbitionDimension, 4> kAllDimensions = {
    AmbitionDimension::NzTargetYear, AmbitionDimension::RedTargetYear,
    AmbitionDimension::RedBaseYear, AmbitionDimension::RedPercentage};

inline std::string_view to_string(AmbitionDimension d) {
  switch (d) {
    case AmbitionDimension::NzTargetYear: return "nz_target_year";
    case AmbitionDimension::RedTargetYear: return "red_target_year";
    case AmbitionDimension::RedBaseYear: return "red_base_year";
    case AmbitionDimension::RedPercentage: return "red_percentage";
  }
  return "nz_target_year";
}

inline std::optional<AmbitionDimension> dimension_from_string(std::string_view s) {
  if (s == "nz_target_year") return AmbitionDimension::NzTargetYear;
  if (s == "red_target_year") return AmbitionDimension::RedTargetYear;
  if (s == "red_base_year") return AmbitionDimension::RedBaseYear;
  if (s == "red_percentage") return AmbitionDimension::RedPercentage;
  return std::nullopt;
}

// The question posed to the Q&A backend for each ambition dimension.
inline std::string question_for(AmbitionDimension d) {
  switch (d) {
    case AmbitionDimension::NzTargetYear:
      return "When does the organization want to achieve net zero?";
    case AmbitionDimension::RedTargetYear:
      return "By which year does the organization want to reduce its emissions?";
    case AmbitionDimension::RedBaseYear:
      return "What is the baseline year or level for the target to which the "
             "reduction target is compared to?";
    case AmbitionDimension::RedPercentage:
      return "What is the reduction target of the organization in %?";
  }
  return "";
}

struct AmbitionGold {
  std::string sample_id;
  AmbitionDimension dimension = AmbitionDimension::NzTargetYear;
  double gold_value = 0;  // years as 4-digit integers, percentages as reals
};

struct QAAnswer {
  std::string answer_text;  // substring of the input text
  double confidence = 0;    // top-span score clamped to [0, 1]
};

// --- numeric-token matching -------------------------------------------------

namespace ambition_detail {

struct NumericToken {
  double value = 0;
  size_t digits = 0;     // digit count ignoring separators
  bool is_integer = true;
};

// Maximal numeric tokens of a string. Thousands separators are removed when
// they sit between digits; '%' and surrounding currency markers are not part
// of the token.
inline std::vector<NumericToken> numeric_tokens(std::string_view s) {
  std::vector<NumericToken> out;
  size_t i = 0;
  auto is_digit = [&](size_t k) {
    return k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]));
  };
  while (i < s.size()) {
    if (!is_digit(i)) {
      ++i;
      continue;
    }
    std::string tok;
    size_t digits = 0;
    bool has_dot = false;
    while (i < s.size()) {
      char c = s[i];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        tok.push_back(c);
        ++digits;
        ++i;
      } else if (c == ',' && is_digit(i + 1)) {
        ++i;  // thousands separator
      } else if (c == '.' && !has_dot && is_digit(i + 1)) {
        tok.push_back('.');
        has_dot = true;
        ++i;
      } else {
        break;
      }
    }
    NumericToken t;
    t.value = std::strtod(tok.c_str(), nullptr);
    t.digits = digits;
    t.is_integer = !has_dot;
    out.push_back(t);
  }
  return out;
}

inline bool is_year_dimension(AmbitionDimension d) {
  return d != AmbitionDimension::RedPercentage;
}

}  // namespace ambition_detail

// True iff the normalized numeric tokens of the answer contain the gold
// value. Years must appear as 4-digit integers; percentages compare
// numerically after stripping %, commas and currency.
inline bool answer_matches(const std::string& answer_text, double gold_value,
                           AmbitionDimension dimension) {
  auto tokens = ambition_detail::numeric_tokens(answer_text);
  for (const auto& t : tokens) {
    if (ambition_detail::is_year_dimension(dimension)) {
      if (t.is_integer && t.digits == 4 &&
          t.value == std::floor(gold_value) && gold_value >= 1000)
        return true;
    } else {
      if (std::fabs(t.value - gold_value) < 1e-9) return true;
    }
  }
  return false;
}

// --- Q&A backend ------------------------------------------------------------

class QaBackend {
 public:
  virtual ~QaBackend() = default;
  // Extractive answer: a span of `context` with a confidence score.
  virtual QAAnswer answer(const std::string& question,
                          const std::string& context) = 0;
};

inline QAAnswer extract(QaBackend& backend, const std::string& text,
                        AmbitionDimension dimension) {
  if (text.empty()) throw ExtractionError("cannot extract from empty text");
  QAAnswer a = backend.answer(question_for(dimension), text);
  a.confidence = std::clamp(a.confidence, 0.0, 1.0);
  if (!a.answer_text.empty() && text.find(a.answer_text) == std::string::npos)
    throw ExtractionError("backend returned a non-extractive span");
  return a;
}

// Rule-scored extractive backend: finds numeric candidates and scores them by
// dimension-specific context cues. Dependency-free stand-in for a neural
// reader with the same interface and a usable confidence signal.
class HeuristicQaBackend final : public QaBackend {
 public:
  QAAnswer answer(const std::string& question, const std::string& context) override {
    return answer_dim(dimension_of(question), context);
  }

  QAAnswer answer_dim(AmbitionDimension dim, const std::string& context) const {
    auto words = tokenize(context);
    double best_score = -1;
    size_t best_begin = 0, best_len = 0;
    for (size_t i = 0; i < words.size(); ++i) {
      const auto& w = words[i];
      auto toks = ambition_detail::numeric_tokens(w.text);
      if (toks.size() != 1) continue;
      const auto& t = toks[0];
      double score = -1;
      switch (dim) {
        case AmbitionDimension::NzTargetYear:
          score = score_year(words, i, t, /*base_year=*/false, /*net_zero=*/true);
          break;
        case AmbitionDimension::RedTargetYear:
          score = score_year(words, i, t, /*base_year=*/false, /*net_zero=*/false);
          break;
        case AmbitionDimension::RedBaseYear:
          score = score_year(words, i, t, /*base_year=*/true, /*net_zero=*/false);
          break;
        case AmbitionDimension::RedPercentage:
          score = score_percentage(words, i, t);
          break;
      }
      if (score > best_score) {
        best_score = score;
        best_begin = w.begin;
        best_len = w.text.size();
      }
    }
    QAAnswer a;
    if (best_score < 0) return a;  // no candidate: empty span, zero confidence
    a.answer_text = context.substr(best_begin, best_len);
    a.confidence = std::clamp(best_score / 6.0, 0.0, 1.0);
    return a;
  }

 private:
  struct Word {
    std::string text;   // raw slice, as in the context
    std::string lower;  // lowercase, for cue matching
    size_t begin = 0;
  };

  static AmbitionDimension dimension_of(const std::string& question) {
    std::string q;
    for (char c : question) q.push_back(static_cast<char>(std::tolower(
        static_cast<unsigned char>(c))));
    if (q.find("net zero") != std::string::npos)
      return AmbitionDimension::NzTargetYear;
    if (q.find("baseline") != std::string::npos ||
        q.find("compared") != std::string::npos)
      return AmbitionDimension::RedBaseYear;
    if (q.find('%') != std::string::npos ||
        q.find("percent") != std::string::npos)
      return AmbitionDimension::RedPercentage;
    return AmbitionDimension::RedTargetYear;
  }

  static std::vector<Word> tokenize(const std::string& context) {
    std::vector<Word> out;
    size_t i = 0;
    while (i < context.size()) {
      if (std::isspace(static_cast<unsigned char>(context[i]))) {
        ++i;
        continue;
      }
      size_t begin = i;
      while (i < context.size() &&
             !std::isspace(static_cast<unsigned char>(context[i])))
        ++i;
      Word w;
      w.begin = begin;
      w.text = context.substr(begin, i - begin);
      for (char c : w.text)
        w.lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      out.push_back(std::move(w));
    }
    return out;
  }

  static bool has_any(const std::string& lower,
                      std::initializer_list<const char*> cues) {
    for (const char* c : cues)
      if (lower.find(c) != std::string::npos) return true;
    return false;
  }

  static bool window_has(const std::vector<Word>& words, size_t center, int lo,
                         int hi, std::initializer_list<const char*> cues) {
    for (int off = lo; off <= hi; ++off) {
      int j = static_cast<int>(center) + off;
      if (j < 0 || j >= static_cast<int>(words.size()) || off == 0) continue;
      if (has_any(words[static_cast<size_t>(j)].lower, cues)) return true;
    }
    return false;
  }

  static double score_year(const std::vector<Word>& words, size_t i,
                           const ambition_detail::NumericToken& t,
                           bool base_year, bool net_zero) {
    if (!t.is_integer || t.digits != 4 || t.value < 1900 || t.value > 2200)
      return -1;
    double score = 1;
    bool baseline_ctx =
        window_has(words, i, -4, -1,
                   {"from", "against", "compared", "versus", "vs", "baseline",
                    "base", "relative", "below"}) ||
        window_has(words, i, 1, 2, {"levels", "level", "baseline"});
    bool forward_ctx = window_has(words, i, -3, -1,
                                  {"by", "until", "before", "in", "for"});
    if (base_year) {
      if (baseline_ctx) score += 3;
      if (forward_ctx && !baseline_ctx) score -= 1;
    } else {
      if (forward_ctx) score += 2;
      if (baseline_ctx) score -= 2;
      if (net_zero) {
        if (window_has(words, i, -10, 10,
                       {"zero", "neutral", "neutrality", "negative"}))
          score += 2;
      } else {
        if (window_has(words, i, -10, 10,
                       {"reduce", "reduction", "cut", "lower", "decrease",
                        "emissions"}))
          score += 2;
      }
    }
    return score;
  }

  static double score_percentage(const std::vector<Word>& words, size_t i,
                                 const ambition_detail::NumericToken& t) {
    const auto& w = words[i];
    bool pct_marker = w.lower.find('%') != std::string::npos ||
                      window_has(words, i, 1, 1, {"percent", "%"});
    if (!pct_marker) return -1;
    if (t.value <= 0 || t.value > 100) return -1;
    double score = 2;
    if (window_has(words, i, -6, 6,
                   {"reduce", "reduction", "cut", "lower", "decrease", "by"}))
      score += 3;
    return score;
  }
};

// --- evaluation -------------------------------------------------------------

struct EvalMode {
  enum class Kind { Raw, Optimal, Confidence } kind = Kind::Raw;
  double threshold = 0;  // meaningful for Confidence

  static EvalMode raw() { return {Kind::Raw, 0}; }
  static EvalMode optimal() { return {Kind::Optimal, 0}; }
  static EvalMode confidence(double t) { return {Kind::Confidence, t}; }
};

inline std::string to_string(const EvalMode& m) {
  switch (m.kind) {
    case EvalMode::Kind::Raw: return "raw";
    case EvalMode::Kind::Optimal: return "optimal";
    case EvalMode::Kind::Confidence: {
      std::ostringstream ss;
      ss << "confidence(" << m.threshold << ")";
      return ss.str();
    }
  }
  return "raw";
}

struct EvalResult {
  EvalMode mode;
  double accuracy = 0;
  double coverage = 1;
  std::vector<std::string> retained_ids;  // sorted by input order
};

inline EvalResult evaluate_dimension(
    const std::vector<AmbitionGold>& golds,
    const std::unordered_map<std::string, std::string>& texts,
    QaBackend& backend, const EvalMode& mode) {
  if (golds.empty()) throw InputError("no gold ambitions to evaluate");
  EvalResult r;
  r.mode = mode;
  size_t retained = 0, correct = 0;
  for (const auto& g : golds) {
    auto it = texts.find(g.sample_id);
    if (it == texts.end())
      throw InputError("no text for gold sample id '" + g.sample_id + "'");
    const std::string& text = it->second;
    bool keep = true;
    if (mode.kind == EvalMode::Kind::Optimal)
      keep = answer_matches(text, g.gold_value, g.dimension);
    QAAnswer a = extract(backend, text, g.dimension);
    if (mode.kind == EvalMode::Kind::Confidence)
      keep = a.confidence >= mode.threshold;
    if (!keep) continue;
    ++retained;
    r.retained_ids.push_back(g.sample_id);
    if (answer_matches(a.answer_text, g.gold_value, g.dimension)) ++correct;
  }
  r.coverage = static_cast<double>(retained) / static_cast<double>(golds.size());
  r.accuracy = retained > 0
                   ? static_cast<double>(correct) / static_cast<double>(retained)
                   : 0.0;
  return r;
}

inline std::vector<EvalResult> accuracy_coverage_curve(
    const std::vector<AmbitionGold>& golds,
    const std::unordered_map<std::string, std::string>& texts,
    QaBackend& backend, const std::vector<double>& thresholds) {
  for (size_t i = 1; i < thresholds.size(); ++i)
    if (thresholds[i] < thresholds[i - 1])
      throw InputError("thresholds must be sorted ascending");
  std::vector<EvalResult> out;
  out.reserve(thresholds.size());
  for (double t : thresholds)
    out.push_back(evaluate_dimension(golds, texts, backend,
                                     EvalMode::confidence(t)));
  return out;
}

// --- gold file I/O ----------------------------------------------------------
// Gold ambition file: TSV of (sample_id, dimension, gold_value).
// Texts file: TSV of (sample_id, text).

inline std::vector<AmbitionGold> read_ambition_golds(std::istream& is) {
  std::vector<AmbitionGold> out;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (first && line.starts_with("sample_id")) {
      first = false;
      continue;
    }
    first = false;
    std::istringstream ss(line);
    AmbitionGold g;
    std::string dim, value;
    if (!std::getline(ss, g.sample_id, '\t') || !std::getline(ss, dim, '\t') ||
        !std::getline(ss, value, '\t'))
      throw IoError("malformed ambition gold line: '" + line + "'");
    auto d = dimension_from_string(dim);
    if (!d) throw IoError("unknown ambition dimension: '" + dim + "'");
    g.dimension = *d;
    g.gold_value = std::strtod(value.c_str(), nullptr);
    bool is_year = ambition_detail::is_year_dimension(g.dimension);
    if (is_year && (g.gold_value < 1900 || g.gold_value > 2200))
      throw IoError("gold year out of range in line: '" + line + "'");
    if (!is_year && (g.gold_value <= 0 || g.gold_value > 100))
      throw IoError("gold percentage out of range in line: '" + line + "'");
    out.push_back(std::move(g));
  }
  return out;
}

inline std::vector<AmbitionGold> read_ambition_golds(
    const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path.string());
  return read_ambition_golds(is);
}

inline std::unordered_map<std::string, std::string> read_id_text_map(
    const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path.string());
  std::unordered_map<std::string, std::string> out;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (first && line.starts_with("sample_id")) {
      first = false;
      continue;
    }
    first = false;
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw IoError("malformed id/text line: '" + line + "'");
    out[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return out;
}

inline void write_curve(const std::vector<EvalResult>& curve, std::ostream& os) {
  os << "threshold\taccuracy\tcoverage\n";
  for (const auto& r : curve)
    os << r.mode.threshold << '\t' << r.accuracy << '\t' << r.coverage << '\n';
}

}  // namespace netzero
