#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "netzero/dataset.hpp"
#include "netzero/errors.hpp"
#include "netzero/trainer.hpp"

namespace netzero {

// The special correction value that marks a sample as meaningless; handled as
// a tombstone on a separate exclusions list, never as a deletion.
inline constexpr std::string_view kRemoveCorrection = "REMOVE";

struct ReviewItem {
  std::string sample_id;
  std::string text;
  TargetLabel gold_label = TargetLabel::None;
  TargetLabel predicted_label = TargetLabel::None;
  int fold = 0;
  int round = 0;
  std::optional<std::string> correction;  // target label name or REMOVE
  std::string reviewer_note;
};

// One ReviewItem per misclassified validation sample, sorted by fold then id.
inline std::vector<ReviewItem> collect_misclassifications(const CVReport& cv,
                                                          const Dataset& ds,
                                                          int round) {
  if (!cv.has_per_sample) throw MissingPredictionsError();
  std::vector<ReviewItem> items;
  for (const auto& p : cv.per_sample) {
    if (p.predicted == p.gold) continue;
    const auto& s = ds.at(p.index);
    ReviewItem item;
    item.sample_id = s.id;
    item.text = s.text;
    item.gold_label = static_cast<TargetLabel>(p.gold);
    item.predicted_label = static_cast<TargetLabel>(p.predicted);
    item.fold = p.fold;
    item.round = round;
    items.push_back(std::move(item));
  }
  std::sort(items.begin(), items.end(),
            [](const ReviewItem& a, const ReviewItem& b) {
              return std::tie(a.fold, a.sample_id) <
                     std::tie(b.fold, b.sample_id);
            });
  return items;
}

// --- review file ------------------------------------------------------------

inline constexpr std::string_view kReviewHeader =
    "sample_id\ttext\tgold_label\tpredicted_label\tfold\tround\tcorrection\treviewer_note";

inline void write_review_file(const std::vector<ReviewItem>& items,
                              std::ostream& os) {
  os << kReviewHeader << '\n';
  for (const auto& r : items) {
    std::string text = r.text;
    std::replace(text.begin(), text.end(), '\t', ' ');
    os << r.sample_id << '\t' << text << '\t' << to_string(r.gold_label)
       << '\t' << to_string(r.predicted_label) << '\t' << r.fold << '\t'
       << r.round << '\t' << (r.correction ? *r.correction : "") << '\t'
       << r.reviewer_note << '\n';
  }
}

inline void write_review_file(const std::vector<ReviewItem>& items,
                              const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write review file: " + path.string());
  write_review_file(items, os);
}

inline std::vector<ReviewItem> read_review_file(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kReviewHeader)
    throw IoError("bad review file header");
  std::vector<ReviewItem> items;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto f = detail::split_tsv(line);
    if (f.size() != 8) throw IoError("expected 8 fields in review line: '" + line + "'");
    ReviewItem r;
    r.sample_id = f[0];
    r.text = f[1];
    r.gold_label = parse_target_label(f[2]);
    r.predicted_label = parse_target_label(f[3]);
    r.fold = std::stoi(f[4]);
    r.round = std::stoi(f[5]);
    if (!f[6].empty()) {
      if (f[6] != kRemoveCorrection && !target_label_from_string(f[6]))
        throw IoError("bad correction value: '" + f[6] + "'");
      r.correction = f[6];
    }
    r.reviewer_note = f[7];
    items.push_back(std::move(r));
  }
  return items;
}

inline std::vector<ReviewItem> read_review_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open review file: " + path.string());
  return read_review_file(is);
}

// --- applying corrections ---------------------------------------------------

struct CorrectionOutcome {
  Dataset dataset;                     // same size as the input, labels updated
  std::vector<std::string> excluded;   // ids tombstoned by REMOVE, sorted
  std::vector<std::string> warnings;   // no-op corrections
  size_t applied = 0;
};

// Applies reviewer corrections. Samples are never added or removed; REMOVE
// verdicts go to the exclusions list. A correction equal to the current label
// is a warning no-op, which makes re-applying a review file idempotent.
inline CorrectionOutcome apply_corrections(const Dataset& ds,
                                           const std::vector<ReviewItem>& items,
                                           int round) {
  CorrectionOutcome out;
  out.dataset = ds;
  std::unordered_map<std::string, size_t> index;
  for (size_t i = 0; i < ds.size(); ++i) index[ds[i].id] = i;

  std::unordered_set<std::string> excluded;
  for (const auto& item : items) {
    auto it = index.find(item.sample_id);
    if (it == index.end()) throw UnknownSampleError(item.sample_id);
    if (!item.correction) continue;
    if (*item.correction == kRemoveCorrection) {
      excluded.insert(item.sample_id);
      continue;
    }
    TargetLabel corrected = parse_target_label(*item.correction);
    LabeledSample& s = out.dataset[it->second];
    if (s.label == corrected) {
      out.warnings.push_back("correction for '" + item.sample_id +
                             "' equals the current label; no-op");
      continue;
    }
    if (!s.audit.empty() && s.audit.back().round >= round)
      throw InputError("audit rounds must be strictly increasing for '" +
                       item.sample_id + "'");
    s.audit.push_back({round, s.label, corrected});
    s.label = corrected;
    ++out.applied;
  }
  out.excluded.assign(excluded.begin(), excluded.end());
  std::sort(out.excluded.begin(), out.excluded.end());
  return out;
}

inline void write_exclusions(const std::vector<std::string>& ids,
                             const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write exclusions: " + path.string());
  for (const auto& id : ids) os << id << '\n';
}

inline std::vector<std::string> read_exclusions(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open exclusions: " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

// Replays the audit trail backwards: the label the sample carried before any
// correction round.
inline TargetLabel original_label(const LabeledSample& s) {
  return s.audit.empty() ? s.label : s.audit.front().old_label;
}

// Reconstructs the pre-correction dataset from the audit trails.
inline Dataset revert_all_corrections(const Dataset& ds) {
  Dataset out = ds;
  for (auto& s : out) {
    s.label = original_label(s);
    s.audit.clear();
  }
  return out;
}

}  // namespace netzero
