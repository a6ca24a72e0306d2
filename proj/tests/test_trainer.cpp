#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <random>

#include "netzero/trainer.hpp"

using namespace netzero;

namespace {

// Trivially separable two-class fixture: target phrases vs small talk.
Dataset separable_fixture() {
  std::vector<std::string> targets = {
      "We commit to net zero by 2050",
      "Our company targets net zero emissions in 2045",
      "Carbon neutrality will be achieved by 2040",
      "We pledge net zero greenhouse gas emissions by 2035",
      "The group aims for net zero operations before 2050",
      "Net zero across the value chain by 2045 is our goal",
      "We will reach climate neutrality no later than 2038",
      "Committed to net zero carbon emissions by 2047",
      "The city plans to reach net zero by 2033",
      "Our net zero commitment covers scope one and two by 2042"};
  std::vector<std::string> chatter = {
      "The weather is nice today in the city",
      "Our quarterly revenue grew faster than expected",
      "The new office opened last month downtown",
      "Customers enjoyed the product launch event",
      "The team celebrated the anniversary together",
      "Lunch options near the campus are improving",
      "The stock market closed slightly higher today",
      "Our engineers shipped the new release on time",
      "The conference keynote covered industry trends",
      "Employees volunteered at the local food bank"};
  Dataset ds;
  int n = 0;
  for (const auto& t : targets) {
    LabeledSample s;
    s.id = "t" + std::to_string(n++);
    s.text = t;
    s.label = TargetLabel::NetZero;
    ds.push_back(s);
  }
  for (const auto& t : chatter) {
    LabeledSample s;
    s.id = "t" + std::to_string(n++);
    s.text = t;
    s.label = TargetLabel::None;
    ds.push_back(s);
  }
  return ds;
}

ClassifierConfig small_config(int num_labels) {
  ClassifierConfig cfg;
  cfg.num_labels = num_labels;
  cfg.epochs = 10;
  cfg.batch_size = 4;
  cfg.grad_accumulation = 1;
  cfg.learning_rate = 5e-5;
  cfg.patience = 5;
  cfg.seed = 7;
  return cfg;
}

// Synthetic 3-class corpus the linear model can learn.
std::vector<Example> synthetic_three_class(size_t per_label, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> nz = {"net zero", "carbon neutral", "climate neutrality"};
  std::vector<std::string> red = {"reduce emissions", "cut CO2", "lower greenhouse gases"};
  std::vector<std::string> none = {"revenue grew", "the office opened", "great quarter"};
  std::vector<std::string> fill = {"company", "plans", "report", "annual", "board",
                                   "statement", "global", "update", "review"};
  auto make = [&](const std::string& core) {
    std::string t = fill[rng() % fill.size()] + " " + core + " " +
                    fill[rng() % fill.size()] + " " +
                    std::to_string(2025 + rng() % 30);
    return t;
  };
  std::vector<Example> out;
  for (size_t i = 0; i < per_label; ++i) {
    out.push_back({make(nz[rng() % nz.size()]), 0});
    out.push_back({make(red[rng() % red.size()]), 1});
    out.push_back({make(none[rng() % none.size()]), 2});
  }
  return out;
}

}  // namespace

TEST_CASE("linear backend reaches perfect accuracy on a separable fixture") {
  auto ds = separable_fixture();
  auto bin = to_binary(ds);
  BinaryDataset train(bin.begin(), bin.begin() + 7);
  train.insert(train.end(), bin.begin() + 10, bin.begin() + 17);
  BinaryDataset val(bin.begin() + 7, bin.begin() + 10);
  val.insert(val.end(), bin.begin() + 17, bin.end());

  LinearBowBackend backend;
  auto model = fine_tune(train, val, small_config(2), backend);
  std::vector<std::string> texts;
  for (const auto& s : val) texts.push_back(s.text);
  auto preds = predict(*model, texts);
  size_t correct = 0;
  for (size_t i = 0; i < val.size(); ++i)
    correct += preds[i].label == static_cast<int>(val[i].label);
  CHECK(correct == val.size());
}

TEST_CASE("num_labels mismatch is a ConfigError") {
  auto ds = separable_fixture();
  auto bin = to_binary(ds);
  LinearBowBackend backend;
  CHECK_THROWS_AS(fine_tune(bin, bin, small_config(3), backend), ConfigError);
  CHECK_THROWS_AS(fine_tune(ds, ds, small_config(2), backend), ConfigError);
}

TEST_CASE("unknown base model id cannot be resolved") {
  CHECK_THROWS_AS(make_backend("transformer:nonexistent"), ModelNotFoundError);
}

TEST_CASE("prediction probabilities are normalized and argmax-consistent") {
  auto ds = separable_fixture();
  LinearBowBackend backend;
  auto model = fine_tune(ds, ds, small_config(3), backend);

  CHECK(predict(*model, std::vector<std::string>{}).empty());

  std::vector<std::string> texts{"We commit to net zero emissions by 2040.",
                                 "The cafeteria menu changed this week"};
  auto preds = predict(*model, texts);
  REQUIRE(preds.size() == 2);
  CHECK(preds[0].label == static_cast<int>(TargetLabel::NetZero));
  for (const auto& p : preds) {
    double sum = 0;
    for (double v : p.probabilities) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(sum == Catch::Approx(1.0).margin(1e-6));
    CHECK(p.label == argmax_label(p.probabilities));
  }
}

TEST_CASE("argmax tie-break picks the lowest label index") {
  std::vector<double> tie{0.4, 0.4, 0.2};
  CHECK(argmax_label(tie) == 0);
  // invariant under positive rescaling
  std::vector<double> scaled{0.8, 0.8, 0.4};
  CHECK(argmax_label(scaled) == argmax_label(tie));
}

TEST_CASE("model save/load round-trips predictions") {
  auto ds = separable_fixture();
  LinearBowBackend backend;
  auto model = fine_tune(ds, ds, small_config(3), backend);
  auto dir = std::filesystem::temp_directory_path() / "netzero_model_rt";
  std::filesystem::remove_all(dir);
  model->save(dir);
  auto loaded = backend.load(dir);
  std::vector<std::string> texts{"net zero by 2050", "the weather is nice"};
  auto a = model->predict(texts);
  auto b = loaded->predict(texts);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].label == b[i].label);
    for (size_t j = 0; j < a[i].probabilities.size(); ++j)
      CHECK(a[i].probabilities[j] ==
            Catch::Approx(b[i].probabilities[j]).margin(1e-6));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("gold-echo stub yields all-perfect cross-validation") {
  auto examples = synthetic_three_class(10, 5);
  GoldEchoBackend stub;
  auto report = cross_validate(examples, small_config(3), stub, 5);
  CHECK(report.accuracy.mean == 1.0);
  CHECK(report.f1.mean == 1.0);
  CHECK(report.precision.mean == 1.0);
  CHECK(report.recall.mean == 1.0);
  CHECK(report.accuracy.std == 0.0);
  CHECK(report.confusion.is_diagonal());
  CHECK(report.confusion.total() == static_cast<int64_t>(examples.size()));
}

TEST_CASE("cross-validation scores every sample exactly once") {
  auto examples = synthetic_three_class(8, 11);
  GoldEchoBackend stub;
  auto report = cross_validate(examples, small_config(3), stub, 4);
  REQUIRE(report.has_per_sample);
  std::vector<int> seen(examples.size(), 0);
  for (const auto& p : report.per_sample) seen[p.index]++;
  for (int c : seen) CHECK(c == 1);
  // pooled confusion row sums equal gold counts of the full dataset
  std::array<int64_t, 3> gold_counts{};
  for (const auto& e : examples) gold_counts[static_cast<size_t>(e.label)]++;
  for (size_t l = 0; l < 3; ++l)
    CHECK(report.confusion.row_sum(l) == gold_counts[l]);
}

TEST_CASE("cross-validation with the linear backend learns synthetic data") {
  auto examples = synthetic_three_class(25, 21);
  LinearBowBackend backend;
  auto report = cross_validate(examples, small_config(3), backend, 5);
  CHECK(report.accuracy.mean > 0.9);
}

TEST_CASE("grid search emits one row per cell and base") {
  auto examples = synthetic_three_class(10, 31);
  GridAxes grid;
  grid.learning_rates = {3e-5, 5e-5, 7e-5};
  grid.epochs = {5, 10};
  grid.batch_sizes = {16, 32};
  auto rows = grid_search(examples, grid, {"stub:gold-echo"}, small_config(3), 5);
  CHECK(rows.size() == 12);
  for (const auto& r : rows) CHECK(r.accuracy.mean == 1.0);
}

TEST_CASE("singleton grid equals a single cross-validation") {
  auto examples = synthetic_three_class(10, 41);
  GridAxes grid;
  grid.learning_rates = {5e-5};
  grid.epochs = {3};
  grid.batch_sizes = {8};
  auto cfg = small_config(3);
  auto rows = grid_search(examples, grid, {"linear-bow"}, cfg, 3);
  REQUIRE(rows.size() == 1);

  cfg.learning_rate = 5e-5;
  cfg.epochs = 3;
  cfg.batch_size = 8;
  cfg.base_model_id = "linear-bow";
  LinearBowBackend backend;
  auto report = cross_validate(examples, cfg, backend, 3);
  CHECK(rows[0].accuracy.mean == Catch::Approx(report.accuracy.mean));
  CHECK(rows[0].accuracy.std == Catch::Approx(report.accuracy.std));
}

TEST_CASE("constant backend accuracy equals label prevalence") {
  auto examples = synthetic_three_class(10, 51);
  ConstantBackend stub(2);
  auto report = cross_validate(examples, small_config(3), stub, 5);
  CHECK(report.accuracy.mean == Catch::Approx(1.0 / 3.0));
}
