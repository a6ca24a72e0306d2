#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "netzero/kfold.hpp"

using namespace netzero;

static std::vector<int> published_distribution() {
  // Table-1 label counts: 990 net zero, 1005 reduction, 1522 none
  std::vector<int> labels;
  labels.insert(labels.end(), 990, 0);
  labels.insert(labels.end(), 1005, 1);
  labels.insert(labels.end(), 1522, 2);
  return labels;
}

TEST_CASE("published distribution yields the expected per-fold counts") {
  auto labels = published_distribution();
  auto folds = stratified_kfold(labels, 5, 42);
  REQUIRE(folds.size() == 5);
  for (const auto& f : folds) {
    std::map<int, int> counts;
    for (size_t i : f.val) counts[labels[i]]++;
    CHECK(counts[0] == 198);
    CHECK(counts[1] == 201);
    CHECK((counts[2] == 304 || counts[2] == 305));
  }
}

TEST_CASE("exact divisibility gives equal folds") {
  std::vector<int> labels{0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
  auto folds = stratified_kfold(labels, 5, 1);
  for (const auto& f : folds) {
    REQUIRE(f.val.size() == 2);
    std::set<int> seen;
    for (size_t i : f.val) seen.insert(labels[i]);
    CHECK(seen == std::set<int>{0, 1});
  }
}

TEST_CASE("same seed gives identical splits") {
  auto labels = published_distribution();
  auto a = stratified_kfold(labels, 5, 99);
  auto b = stratified_kfold(labels, 5, 99);
  for (int f = 0; f < 5; ++f) {
    CHECK(a[f].val == b[f].val);
    CHECK(a[f].train == b[f].train);
  }
}

TEST_CASE("label with fewer samples than k is infeasible") {
  std::vector<int> labels{0, 0, 0, 1};
  CHECK_THROWS_AS(stratified_kfold(labels, 3, 0), StratificationInfeasibleError);
}

TEST_CASE("folds partition the dataset with balanced label counts") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    int k = 2 + static_cast<int>(rng() % 5);
    std::vector<int> labels;
    int num_labels = 2 + static_cast<int>(rng() % 3);
    for (int l = 0; l < num_labels; ++l) {
      int count = k + static_cast<int>(rng() % 40);
      labels.insert(labels.end(), count, l);
    }
    std::shuffle(labels.begin(), labels.end(), rng);

    auto folds = stratified_kfold(labels, k, rng());
    std::set<size_t> all_val;
    for (const auto& f : folds) {
      for (size_t i : f.val) {
        CHECK(!all_val.contains(i));  // pairwise disjoint
        all_val.insert(i);
      }
      // train ∪ val covers everything, disjointly
      CHECK(f.train.size() + f.val.size() == labels.size());
    }
    CHECK(all_val.size() == labels.size());  // union = dataset

    // per-label validation counts within ±1 across folds
    for (int l = 0; l < num_labels; ++l) {
      int mn = 1 << 30, mx = 0;
      for (const auto& f : folds) {
        int c = 0;
        for (size_t i : f.val) c += labels[i] == l;
        mn = std::min(mn, c);
        mx = std::max(mx, c);
      }
      CHECK(mx - mn <= 1);
    }
  }
}
