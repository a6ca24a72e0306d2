#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <regex>
#include <set>

#include "netzero/ambition.hpp"

using namespace netzero;

namespace {

// Independent brute-force oracle for numeric containment: regex over every
// maximal digit-led token, normalization by hand.
bool oracle_matches(const std::string& text, double gold, AmbitionDimension dim) {
  static const std::regex num_re(R"([0-9][0-9,\.]*)");
  auto begin = std::sregex_iterator(text.begin(), text.end(), num_re);
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    std::string tok = it->str();
    // strip trailing separators that are not part of the number
    while (!tok.empty() && (tok.back() == '.' || tok.back() == ','))
      tok.pop_back();
    std::string norm;
    size_t digits = 0;
    bool has_dot = false;
    for (size_t i = 0; i < tok.size(); ++i) {
      char c = tok[i];
      if (c == ',') continue;  // thousands separator
      if (c == '.') {
        if (has_dot) { tok.resize(i); break; }
        has_dot = true;
      } else {
        ++digits;
      }
      norm.push_back(c);
    }
    if (norm.empty()) continue;
    double v = std::stod(norm);
    if (dim == AmbitionDimension::RedPercentage) {
      if (std::fabs(v - gold) < 1e-9) return true;
    } else {
      if (!has_dot && digits == 4 && v == gold) return true;
    }
  }
  return false;
}

std::vector<AmbitionGold> fixture_golds() {
  return read_ambition_golds(std::string(NETZERO_DATA_DIR) + "/ambition_gold.tsv");
}

std::unordered_map<std::string, std::string> fixture_texts() {
  return read_id_text_map(std::string(NETZERO_DATA_DIR) + "/ambition_texts.tsv");
}

std::vector<AmbitionGold> golds_for(AmbitionDimension d) {
  std::vector<AmbitionGold> out;
  for (const auto& g : fixture_golds())
    if (g.dimension == d) out.push_back(g);
  return out;
}

}  // namespace

TEST_CASE("each dimension has its own verbatim question") {
  CHECK(question_for(AmbitionDimension::NzTargetYear) ==
        "When does the organization want to achieve net zero?");
  CHECK(question_for(AmbitionDimension::RedTargetYear) ==
        "By which year does the organization want to reduce its emissions?");
  CHECK(question_for(AmbitionDimension::RedBaseYear).starts_with(
      "What is the baseline year or level"));
  std::set<std::string> qs;
  for (auto d : kAllDimensions) qs.insert(question_for(d));
  CHECK(qs.size() == 4);
}

TEST_CASE("answer_matches on direct containment") {
  CHECK(answer_matches("by 2050", 2050, AmbitionDimension::NzTargetYear));
  CHECK(answer_matches("27.5% below 2005 levels", 27.5,
                       AmbitionDimension::RedPercentage));
  CHECK(answer_matches("no later than 2049 or 2050", 2050,
                       AmbitionDimension::NzTargetYear));
  CHECK(!answer_matches("by 2049", 2050, AmbitionDimension::NzTargetYear));
  CHECK(!answer_matches("", 2050, AmbitionDimension::NzTargetYear));
  // years must appear as 4-digit integers
  CHECK(!answer_matches("20500 units", 2050, AmbitionDimension::NzTargetYear));
  CHECK(!answer_matches("by 2050.0", 2050, AmbitionDimension::NzTargetYear));
  // normalization strips thousands separators and percent signs
  CHECK(answer_matches("2,050", 2050, AmbitionDimension::NzTargetYear));
  CHECK(answer_matches("a 40% cut", 40, AmbitionDimension::RedPercentage));
  CHECK(answer_matches("40 percent", 40, AmbitionDimension::RedPercentage));
}

TEST_CASE("answer_matches agrees with the brute-force oracle on synthetic claims") {
  std::mt19937 rng(101);
  std::vector<std::string> templates = {
      "We will cut emissions {P}% by {Y} against {B} levels.",
      "Target: {P} percent below {B} by {Y}.",
      "Reach net zero in {Y}; interim cut of {P}% vs {B}.",
      "Reduce by {P}%, baseline {B}, deadline {Y}.",
      "No numbers here at all.",
      "Invested 1,500 million in {Y} to cut {P}%.",
      "From {B} levels we go down {P}.5% by {Y}.",
      "Approximately {P}% (vs. {B}) no later than {Y}!",
  };
  auto subst = [](std::string s, const std::string& key, const std::string& val) {
    size_t pos;
    while ((pos = s.find(key)) != std::string::npos) s.replace(pos, key.size(), val);
    return s;
  };
  size_t checked = 0, agreements = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int year = 1950 + static_cast<int>(rng() % 200);
    int base = 1950 + static_cast<int>(rng() % 100);
    int pct = 1 + static_cast<int>(rng() % 99);
    std::string text = templates[rng() % templates.size()];
    text = subst(text, "{Y}", std::to_string(year));
    text = subst(text, "{B}", std::to_string(base));
    text = subst(text, "{P}", std::to_string(pct));

    // probe with both embedded and foreign values across all dimensions
    std::vector<std::pair<double, AmbitionDimension>> probes = {
        {year, AmbitionDimension::NzTargetYear},
        {base, AmbitionDimension::RedBaseYear},
        {year + 1, AmbitionDimension::RedTargetYear},
        {pct, AmbitionDimension::RedPercentage},
        {pct + 0.5, AmbitionDimension::RedPercentage},
    };
    for (const auto& [v, d] : probes) {
      ++checked;
      agreements += answer_matches(text, v, d) == oracle_matches(text, v, d);
    }
  }
  CHECK(checked == agreements);  // 100% agreement required
  CHECK(checked >= 5000);
}

TEST_CASE("extract returns a substring span with clamped confidence") {
  HeuristicQaBackend backend;
  std::string text = "We will cut emissions 40% by 2035 against 2018 levels.";
  auto a = extract(backend, text, AmbitionDimension::RedTargetYear);
  CHECK(answer_matches(a.answer_text, 2035, AmbitionDimension::RedTargetYear));
  CHECK(text.find(a.answer_text) != std::string::npos);
  CHECK(a.confidence >= 0.0);
  CHECK(a.confidence <= 1.0);

  auto b = extract(backend, text, AmbitionDimension::RedBaseYear);
  CHECK(answer_matches(b.answer_text, 2018, AmbitionDimension::RedBaseYear));
  auto p = extract(backend, text, AmbitionDimension::RedPercentage);
  CHECK(answer_matches(p.answer_text, 40, AmbitionDimension::RedPercentage));
}

TEST_CASE("extract rejects empty text") {
  HeuristicQaBackend backend;
  CHECK_THROWS_AS(extract(backend, "", AmbitionDimension::NzTargetYear),
                  ExtractionError);
}

TEST_CASE("extracted answers are substrings across the fixture") {
  HeuristicQaBackend backend;
  auto texts = fixture_texts();
  for (const auto& [id, text] : texts) {
    for (auto d : kAllDimensions) {
      auto a = extract(backend, text, d);
      if (!a.answer_text.empty())
        CHECK(text.find(a.answer_text) != std::string::npos);
    }
  }
}

TEST_CASE("raw accuracy on the shipped gold fixture") {
  HeuristicQaBackend backend;
  auto texts = fixture_texts();
  auto golds = fixture_golds();
  REQUIRE(golds.size() >= 50);
  auto r = evaluate_dimension(golds, texts, backend, EvalMode::raw());
  CHECK(r.coverage == 1.0);
  CHECK(r.accuracy >= 0.90);
}

TEST_CASE("optimal mode retains a subset of raw") {
  HeuristicQaBackend backend;
  auto texts = fixture_texts();
  for (auto d : kAllDimensions) {
    auto golds = golds_for(d);
    auto raw = evaluate_dimension(golds, texts, backend, EvalMode::raw());
    auto opt = evaluate_dimension(golds, texts, backend, EvalMode::optimal());
    CHECK(opt.coverage <= raw.coverage);
    std::set<std::string> raw_ids(raw.retained_ids.begin(), raw.retained_ids.end());
    for (const auto& id : opt.retained_ids) CHECK(raw_ids.contains(id));
  }
}

TEST_CASE("confidence zero is exactly raw") {
  HeuristicQaBackend backend;
  auto texts = fixture_texts();
  for (auto d : kAllDimensions) {
    auto golds = golds_for(d);
    auto raw = evaluate_dimension(golds, texts, backend, EvalMode::raw());
    auto c0 = evaluate_dimension(golds, texts, backend, EvalMode::confidence(0));
    CHECK(c0.retained_ids == raw.retained_ids);
    CHECK(c0.accuracy == raw.accuracy);
    CHECK(c0.coverage == 1.0);
  }
}

TEST_CASE("coverage is monotone non-increasing along the curve") {
  HeuristicQaBackend backend;
  auto texts = fixture_texts();
  std::vector<double> thresholds;
  for (int i = 0; i <= 20; ++i) thresholds.push_back(i * 0.05);
  for (auto d : kAllDimensions) {
    auto golds = golds_for(d);
    auto curve = accuracy_coverage_curve(golds, texts, backend, thresholds);
    REQUIRE(curve.size() == 21);
    for (size_t i = 1; i < curve.size(); ++i)
      CHECK(curve[i].coverage <= curve[i - 1].coverage);
  }
}

TEST_CASE("degenerate single-threshold curve equals raw") {
  HeuristicQaBackend backend;
  auto texts = fixture_texts();
  auto golds = golds_for(AmbitionDimension::NzTargetYear);
  auto curve = accuracy_coverage_curve(golds, texts, backend, {0.0});
  REQUIRE(curve.size() == 1);
  auto raw = evaluate_dimension(golds, texts, backend, EvalMode::raw());
  CHECK(curve[0].accuracy == raw.accuracy);
  CHECK(curve[0].coverage == raw.coverage);
}

TEST_CASE("missing text for a gold id is an input error") {
  HeuristicQaBackend backend;
  std::vector<AmbitionGold> golds{{"ghost", AmbitionDimension::NzTargetYear, 2050}};
  std::unordered_map<std::string, std::string> texts;
  CHECK_THROWS_AS(evaluate_dimension(golds, texts, backend, EvalMode::raw()),
                  InputError);
}

TEST_CASE("gold file validation") {
  std::istringstream bad_year("x\tnz_target_year\t1492\n");
  CHECK_THROWS_AS(read_ambition_golds(bad_year), IoError);
  std::istringstream bad_pct("x\tred_percentage\t120\n");
  CHECK_THROWS_AS(read_ambition_golds(bad_pct), IoError);
  std::istringstream bad_dim("x\tbogus\t2050\n");
  CHECK_THROWS_AS(read_ambition_golds(bad_dim), IoError);
}
