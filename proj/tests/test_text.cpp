#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "netzero/dataset.hpp"
#include "netzero/text.hpp"

using namespace netzero;

TEST_CASE("clean_text removes URLs") {
  CHECK(clean_text("Net zero by 2050. See https://x.co/a") ==
        "Net zero by 2050. See");
  CHECK(clean_text("See www.example.com/page for details") ==
        "See for details");
  CHECK(clean_text("prefix http://a.b suffix") == "prefix suffix");
}

TEST_CASE("clean_text on empty input") { CHECK(clean_text("") == ""); }

TEST_CASE("clean_text collapses whitespace") {
  CHECK(clean_text("Reduce\t\nemissions  by 30%") == "Reduce emissions by 30%");
  CHECK(clean_text("   lead and trail \n") == "lead and trail");
}

TEST_CASE("clean_text preserves target-relevant tokens") {
  CHECK(clean_text("warming to 1.5°C by 2050") == "warming to 1.5°C by 2050");
  CHECK(clean_text("cut 30% vs. 2005 (baseline)") == "cut 30% vs. 2005 (baseline)");
  CHECK(clean_text("invest €5bn") == "invest €5bn");
}

TEST_CASE("clean_text strips control and exotic characters") {
  CHECK(clean_text("net\x01 zero\x7f now") == "net zero now");
  // emoji dropped, words kept
  CHECK(clean_text("go green \xF0\x9F\x8C\x8D now") == "go green now");
}

TEST_CASE("clean_text is idempotent") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> ch(0, 255);
  for (int trial = 0; trial < 200; ++trial) {
    std::string s;
    int len = static_cast<int>(rng() % 120);
    for (int i = 0; i < len; ++i) s.push_back(static_cast<char>(ch(rng)));
    std::string once = clean_text(s);
    CHECK(clean_text(once) == once);
  }
}

TEST_CASE("word_count uses whitespace tokens of cleaned text") {
  CHECK(word_count("We will reach net zero by 2050") == 7);
  CHECK(word_count("Net zero now") == 3);
  CHECK(word_count("") == 0);
}

static LabeledSample sample(std::string id, std::string text,
                            TargetLabel l = TargetLabel::None) {
  LabeledSample s;
  s.id = std::move(id);
  s.text = std::move(text);
  s.label = l;
  return s;
}

TEST_CASE("filter_short keeps only samples with enough words") {
  Dataset ds{sample("a", "Net zero now"),
             sample("b", "We will reach net zero by 2050")};
  auto out = filter_short(ds, 5);
  REQUIRE(out.size() == 1);
  CHECK(out[0].id == "b");
}

TEST_CASE("filter_short on empty input") {
  CHECK(filter_short({}, 5).empty());
}

TEST_CASE("filter_short never grows and preserves order") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Dataset ds;
    size_t n = rng() % 40;
    for (size_t i = 0; i < n; ++i) {
      std::string text;
      size_t w = rng() % 10;
      for (size_t j = 0; j < w; ++j) text += "word ";
      ds.push_back(sample("id" + std::to_string(i), text));
    }
    auto out = filter_short(ds, 1 + rng() % 8);
    CHECK(out.size() <= ds.size());
    // order preserved: ids must appear in increasing original order
    size_t last = 0;
    bool ok = true;
    for (const auto& s : out) {
      size_t idx = std::stoul(s.id.substr(2));
      if (idx < last) ok = false;
      last = idx;
    }
    CHECK(ok);
  }
}
