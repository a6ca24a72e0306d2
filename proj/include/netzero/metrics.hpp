#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "netzero/errors.hpp"

namespace netzero {

// Rows are gold labels, columns predicted. Columns may exceed rows when a
// scorer tracks an extra "unparseable" prediction bucket.
class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  ConfusionMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), m_(rows * cols, 0) {}
  explicit ConfusionMatrix(size_t n) : ConfusionMatrix(n, n) {}

  void add(size_t gold, size_t pred, int64_t count = 1) {
    m_.at(gold * cols_ + pred) += count;
  }
  int64_t at(size_t gold, size_t pred) const { return m_.at(gold * cols_ + pred); }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  int64_t row_sum(size_t r) const {
    int64_t s = 0;
    for (size_t c = 0; c < cols_; ++c) s += at(r, c);
    return s;
  }
  int64_t col_sum(size_t c) const {
    int64_t s = 0;
    for (size_t r = 0; r < rows_; ++r) s += at(r, c);
    return s;
  }
  int64_t total() const {
    int64_t s = 0;
    for (int64_t v : m_) s += v;
    return s;
  }
  int64_t trace() const {
    int64_t s = 0;
    for (size_t i = 0; i < std::min(rows_, cols_); ++i) s += at(i, i);
    return s;
  }
  bool is_diagonal() const {
    for (size_t r = 0; r < rows_; ++r)
      for (size_t c = 0; c < cols_; ++c)
        if (r != c && at(r, c) != 0) return false;
    return true;
  }

  ConfusionMatrix& operator+=(const ConfusionMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
      throw InputShapeError("confusion matrix shape mismatch");
    for (size_t i = 0; i < m_.size(); ++i) m_[i] += other.m_[i];
    return *this;
  }

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<int64_t> m_;
};

struct FoldMetrics {
  double accuracy = 0, f1 = 0, precision = 0, recall = 0;
};

enum class Averaging { Macro, Weighted };

// Accuracy plus averaged precision/recall/F1 from a confusion matrix.
// Per-class F1 is the harmonic mean of that class's precision and recall;
// classes absent from both gold and predictions score 0.
inline FoldMetrics metrics_from_confusion(const ConfusionMatrix& cm,
                                          Averaging avg = Averaging::Macro) {
  FoldMetrics fm;
  int64_t total = cm.total();
  if (total == 0) return fm;
  fm.accuracy = static_cast<double>(cm.trace()) / static_cast<double>(total);
  double psum = 0, rsum = 0, fsum = 0, wsum = 0;
  for (size_t c = 0; c < cm.rows(); ++c) {
    double tp = static_cast<double>(cm.at(c, c));
    double gold = static_cast<double>(cm.row_sum(c));
    double pred = static_cast<double>(cm.col_sum(c));
    double prec = pred > 0 ? tp / pred : 0.0;
    double rec = gold > 0 ? tp / gold : 0.0;
    double f1 = (prec + rec) > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
    double w = avg == Averaging::Macro ? 1.0 : gold / static_cast<double>(total);
    psum += w * prec;
    rsum += w * rec;
    fsum += w * f1;
    wsum += w;
  }
  if (wsum > 0) {
    fm.precision = psum / wsum;
    fm.recall = rsum / wsum;
    fm.f1 = fsum / wsum;
  }
  return fm;
}

struct MeanStd {
  double mean = 0, std = 0;
};

// Sample standard deviation (n-1 denominator), 0 for a single value.
inline MeanStd mean_std(const std::vector<double>& v) {
  MeanStd r;
  if (v.empty()) return r;
  for (double x : v) r.mean += x;
  r.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0;
    for (double x : v) ss += (x - r.mean) * (x - r.mean);
    r.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return r;
}

inline void print_confusion(const ConfusionMatrix& cm,
                            const std::vector<std::string>& gold_names,
                            const std::vector<std::string>& pred_names,
                            std::ostream& os) {
  os << "gold\\pred";
  for (const auto& n : pred_names) os << '\t' << n;
  os << '\n';
  for (size_t r = 0; r < cm.rows(); ++r) {
    os << gold_names.at(r);
    for (size_t c = 0; c < cm.cols(); ++c) os << '\t' << cm.at(r, c);
    os << '\n';
  }
}

}  // namespace netzero
