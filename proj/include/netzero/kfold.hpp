#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "netzero/dataset.hpp"
#include "netzero/errors.hpp"

namespace netzero {

struct FoldSplit {
  std::vector<size_t> train;
  std::vector<size_t> val;
};

// Stratified k-fold over integer class labels. Label-wise shuffled
// round-robin: per label, indices are shuffled with a seed-derived engine and
// dealt to folds, so per-label validation counts differ by at most one.
inline std::vector<FoldSplit> stratified_kfold(const std::vector<int>& labels,
                                               int k, uint64_t seed) {
  if (k < 2) throw StratificationInfeasibleError("k must be >= 2");
  std::map<int, std::vector<size_t>> by_label;
  for (size_t i = 0; i < labels.size(); ++i) by_label[labels[i]].push_back(i);
  for (const auto& [label, idx] : by_label) {
    if (idx.size() < static_cast<size_t>(k))
      throw StratificationInfeasibleError(
          "label " + std::to_string(label) + " has " +
          std::to_string(idx.size()) + " samples, fewer than k=" +
          std::to_string(k));
  }

  std::vector<std::vector<size_t>> fold_val(k);
  for (auto& [label, idx] : by_label) {
    std::mt19937_64 rng(seed * 1315423911ull + static_cast<uint64_t>(label));
    std::shuffle(idx.begin(), idx.end(), rng);
    for (size_t j = 0; j < idx.size(); ++j)
      fold_val[j % static_cast<size_t>(k)].push_back(idx[j]);
  }

  std::vector<FoldSplit> out(k);
  for (int f = 0; f < k; ++f) {
    std::sort(fold_val[f].begin(), fold_val[f].end());
    out[f].val = fold_val[f];
    for (int g = 0; g < k; ++g) {
      if (g == f) continue;
      out[f].train.insert(out[f].train.end(), fold_val[g].begin(), fold_val[g].end());
    }
    std::sort(out[f].train.begin(), out[f].train.end());
  }
  return out;
}

inline std::vector<int> label_ints(const Dataset& ds) {
  std::vector<int> out;
  out.reserve(ds.size());
  for (const auto& s : ds) out.push_back(static_cast<int>(s.label));
  return out;
}

inline std::vector<int> label_ints(const BinaryDataset& ds) {
  std::vector<int> out;
  out.reserve(ds.size());
  for (const auto& s : ds) out.push_back(static_cast<int>(s.label));
  return out;
}

inline std::vector<FoldSplit> stratified_kfold(const Dataset& ds, int k,
                                               uint64_t seed) {
  return stratified_kfold(label_ints(ds), k, seed);
}

}  // namespace netzero
