#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <random>
#include <set>

#include "netzero/llm.hpp"

using namespace netzero;

namespace {

Dataset llm_fixture() {
  struct Row {
    const char* text;
    TargetLabel label;
  };
  const Row rows[] = {
      {"We aim for net zero by 2045.", TargetLabel::NetZero},
      {"Carbon neutrality is planned for 2040 across all sites.", TargetLabel::NetZero},
      {"The group commits to net zero greenhouse gas emissions by 2050.", TargetLabel::NetZero},
      {"Emissions will fall 30% by 2030 compared with 2005.", TargetLabel::Reduction},
      {"We pledge to cut scope 1 emissions in half by 2035.", TargetLabel::Reduction},
      {"A 55% reduction against the 1990 baseline is our target.", TargetLabel::Reduction},
      {"Quarterly revenue exceeded analyst expectations.", TargetLabel::None},
      {"The new plant opened ahead of schedule.", TargetLabel::None},
      {"Our board approved the dividend increase.", TargetLabel::None},
      {"Weather disruptions delayed several shipments.", TargetLabel::None},
  };
  Dataset ds;
  int n = 0;
  for (const auto& r : rows) {
    LabeledSample s;
    s.id = "llm" + std::to_string(n++);
    s.text = r.text;
    s.label = r.label;
    ds.push_back(s);
  }
  return ds;
}

}  // namespace

TEST_CASE("build_prompt embeds the text between markers") {
  auto p = build_prompt("We aim for net zero by 2045.");
  CHECK(p.find("Provided text: ^^^We aim for net zero by 2045.^^^") !=
        std::string::npos);
  CHECK(p.find("'Reduction'") != std::string::npos);
  CHECK(p.find("'Net Zero'") != std::string::npos);
  CHECK(p.find("'None'") != std::string::npos);
}

TEST_CASE("build_prompt rejects empty text") {
  CHECK_THROWS_AS(build_prompt(""), InputError);
}

TEST_CASE("build_prompt is injective in the text") {
  std::set<std::string> prompts;
  std::vector<std::string> texts{"a", "b", "net zero", "net  zero", "x y", "x  y"};
  for (const auto& t : texts) prompts.insert(build_prompt(t));
  CHECK(prompts.size() == texts.size());
}

TEST_CASE("parse_response handles canonical and noisy answers") {
  CHECK(parse_response("Net Zero").parsed == ParsedVerdict::NetZero);
  CHECK(parse_response("  reduction.").parsed == ParsedVerdict::Reduction);
  CHECK(parse_response("None").parsed == ParsedVerdict::None);
  CHECK(parse_response("net-zero").parsed == ParsedVerdict::NetZero);
  CHECK(parse_response("The answer is: Reduction").parsed ==
        ParsedVerdict::Reduction);
  CHECK(parse_response("It is both Reduction and Net Zero").parsed ==
        ParsedVerdict::Unparseable);
  CHECK(parse_response("banana").parsed == ParsedVerdict::Unparseable);
  CHECK(parse_response("").parsed == ParsedVerdict::Unparseable);
  // word-boundary: "nonetheless" must not read as "none"
  CHECK(parse_response("nonetheless unclear").parsed == ParsedVerdict::Unparseable);
}

TEST_CASE("canonical answers round-trip every label") {
  CHECK(parse_response("Net Zero").parsed == ParsedVerdict::NetZero);
  CHECK(parse_response("Reduction").parsed == ParsedVerdict::Reduction);
  CHECK(parse_response("None").parsed == ParsedVerdict::None);
}

TEST_CASE("gold-echo mock client yields perfect metrics") {
  auto ds = llm_fixture();
  GoldEchoChatClient client(ds);
  auto r = evaluate_zero_shot(ds, client);
  CHECK(r.metrics.accuracy == 1.0);
  CHECK(r.metrics.f1 == 1.0);
  CHECK(r.metrics.precision == 1.0);
  CHECK(r.metrics.recall == 1.0);
  CHECK(r.unparseable == 0);
  CHECK(r.confusion.is_diagonal());
}

TEST_CASE("constant unparseable answer scores zero accuracy") {
  auto ds = llm_fixture();
  ConstantChatClient client("banana");
  auto r = evaluate_zero_shot(ds, client);
  CHECK(r.metrics.accuracy == 0.0);
  CHECK(r.unparseable == ds.size());
}

TEST_CASE("constant-label mock accuracy equals label prevalence") {
  auto ds = llm_fixture();
  struct Case {
    const char* answer;
    TargetLabel label;
  };
  for (const auto& c : {Case{"Net Zero", TargetLabel::NetZero},
                        Case{"Reduction", TargetLabel::Reduction},
                        Case{"None", TargetLabel::None}}) {
    ConstantChatClient client(c.answer);
    auto r = evaluate_zero_shot(ds, client);
    size_t prevalence = 0;
    for (const auto& s : ds) prevalence += s.label == c.label;
    CHECK(r.metrics.accuracy ==
          Catch::Approx(static_cast<double>(prevalence) /
                        static_cast<double>(ds.size())));
  }
}

TEST_CASE("cached responses replay without touching the client") {
  auto ds = llm_fixture();
  auto dir = std::filesystem::temp_directory_path() / "netzero_llm_cache";
  std::filesystem::remove_all(dir);

  // first pass fills the cache from the gold-echo client
  {
    GoldEchoChatClient inner(ds);
    // same cache key namespace as the replay client below
    class NamedGoldEcho final : public ChatClient {
     public:
      NamedGoldEcho(GoldEchoChatClient& g) : g_(g) {}
      std::string complete(const std::string& p) override { return g_.complete(p); }
      std::string model_name() const override { return "fixture-model"; }

     private:
      GoldEchoChatClient& g_;
    } named(inner);
    CachingChatClient cached(named, ResponseCache(dir));
    auto r = evaluate_zero_shot(ds, cached);
    CHECK(r.metrics.accuracy == 1.0);
  }

  // second pass must be served fully from disk
  {
    UnreachableChatClient inner("fixture-model");
    CachingChatClient cached(inner, ResponseCache(dir));
    RetryPolicy retry;
    retry.attempts = 1;  // any client call would surface immediately
    auto r = evaluate_zero_shot(ds, cached, retry);
    CHECK(r.metrics.accuracy == 1.0);
    CHECK(r.unparseable == 0);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("transport failures degrade to unparseable after retries") {
  auto ds = llm_fixture();
  UnreachableChatClient client;
  RetryPolicy retry;
  retry.attempts = 2;
  retry.initial_backoff = std::chrono::milliseconds(1);
  auto r = evaluate_zero_shot(ds, client, retry);
  CHECK(r.unparseable == ds.size());
  CHECK(r.verdicts[0].raw_response.find("transport error") != std::string::npos);
}
