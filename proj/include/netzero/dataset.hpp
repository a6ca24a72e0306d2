#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "netzero/errors.hpp"
#include "netzero/labels.hpp"
#include "netzero/text.hpp"

namespace netzero {

struct AuditEntry {
  int round = 0;
  TargetLabel old_label = TargetLabel::None;
  TargetLabel new_label = TargetLabel::None;

  bool operator==(const AuditEntry&) const = default;
};

struct LabeledSample {
  std::string id;
  std::string text;
  TargetLabel label = TargetLabel::None;
  std::optional<TargetLabel> annotator_label;  // original expert label
  Provenance provenance = Provenance::Tracker;
  std::vector<AuditEntry> audit;  // rounds strictly increasing
};

using Dataset = std::vector<LabeledSample>;

struct BinarySample {
  std::string id;
  std::string text;
  BinaryLabel label = BinaryLabel::None;
};

using BinaryDataset = std::vector<BinarySample>;

struct RawClaim {
  std::string text;
  std::string fine_label;
  ActorType actor_type = ActorType::Company;
  std::string source_id;
};

struct DatasetStats {
  size_t count = 0;
  double mean_len = 0, std_len = 0;
  size_t min_len = 0, max_len = 0;
  double p25 = 0, p75 = 0;
  std::map<TargetLabel, size_t> per_label_counts;
};

// ---------------------------------------------------------------------------

inline Dataset filter_short(const Dataset& samples, size_t min_words = 5) {
  Dataset out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    if (word_count(s.text) >= min_words) out.push_back(s);
  }
  return out;
}

inline BinaryDataset to_binary(const Dataset& ds) {
  BinaryDataset out;
  out.reserve(ds.size());
  for (const auto& s : ds) out.push_back({s.id, s.text, to_binary(s.label)});
  return out;
}

namespace detail {

// Linear-interpolation percentile over a sorted vector, q in [0,1].
inline double percentile(const std::vector<size_t>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  double pos = q * static_cast<double>(sorted.size() - 1);
  size_t lo = static_cast<size_t>(pos);
  size_t hi = std::min(lo + 1, sorted.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return static_cast<double>(sorted[lo]) * (1.0 - frac) +
         static_cast<double>(sorted[hi]) * frac;
}

}  // namespace detail

inline DatasetStats dataset_stats(const Dataset& samples) {
  if (samples.empty()) throw EmptyDatasetError();
  DatasetStats st;
  st.count = samples.size();
  std::vector<size_t> lens;
  lens.reserve(samples.size());
  for (const auto& s : samples) {
    lens.push_back(word_count(s.text));
    st.per_label_counts[s.label]++;
  }
  for (TargetLabel l : kAllTargetLabels) st.per_label_counts.try_emplace(l, 0);
  std::sort(lens.begin(), lens.end());
  st.min_len = lens.front();
  st.max_len = lens.back();
  double sum = 0;
  for (size_t v : lens) sum += static_cast<double>(v);
  st.mean_len = sum / static_cast<double>(lens.size());
  double ss = 0;
  for (size_t v : lens) {
    double d = static_cast<double>(v) - st.mean_len;
    ss += d * d;
  }
  st.std_len = lens.size() > 1
                   ? std::sqrt(ss / static_cast<double>(lens.size() - 1))
                   : 0.0;
  st.p25 = detail::percentile(lens, 0.25);
  st.p75 = detail::percentile(lens, 0.75);
  return st;
}

// --- serialization ----------------------------------------------------------
// Canonical dataset file: TSV, header line, one record per line. Text is
// cleaned before writing, so it never contains tabs or newlines.

namespace detail {

inline std::string audit_to_string(const std::vector<AuditEntry>& audit) {
  std::string out;
  for (const auto& e : audit) {
    if (!out.empty()) out.push_back(';');
    out += std::to_string(e.round);
    out.push_back(':');
    out += to_string(e.old_label);
    out.push_back('>');
    out += to_string(e.new_label);
  }
  return out;
}

inline std::vector<AuditEntry> audit_from_string(std::string_view s) {
  std::vector<AuditEntry> out;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t end = s.find(';', pos);
    if (end == std::string_view::npos) end = s.size();
    std::string_view item = s.substr(pos, end - pos);
    size_t colon = item.find(':');
    size_t gt = item.find('>');
    if (colon == std::string_view::npos || gt == std::string_view::npos || gt < colon)
      throw IoError("malformed audit entry: '" + std::string(item) + "'");
    AuditEntry e;
    e.round = std::stoi(std::string(item.substr(0, colon)));
    e.old_label = parse_target_label(item.substr(colon + 1, gt - colon - 1));
    e.new_label = parse_target_label(item.substr(gt + 1));
    out.push_back(e);
    pos = end + 1;
  }
  return out;
}

inline std::vector<std::string> split_tsv(const std::string& line) {
  std::vector<std::string> fields;
  size_t pos = 0;
  while (true) {
    size_t tab = line.find('\t', pos);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  return fields;
}

}  // namespace detail

inline constexpr std::string_view kDatasetHeader =
    "id\ttext\tlabel\tannotator_label\tprovenance\taudit";

inline void write_dataset(const Dataset& ds, std::ostream& os) {
  os << kDatasetHeader << '\n';
  for (const auto& s : ds) {
    os << s.id << '\t' << clean_text(s.text) << '\t' << to_string(s.label)
       << '\t' << (s.annotator_label ? to_string(*s.annotator_label) : "")
       << '\t' << to_string(s.provenance) << '\t'
       << detail::audit_to_string(s.audit) << '\n';
  }
}

inline void write_dataset(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  write_dataset(ds, os);
}

inline Dataset read_dataset(std::istream& is) {
  Dataset ds;
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty dataset file");
  if (line != kDatasetHeader)
    throw IoError("unexpected dataset header: '" + line + "'");
  std::unordered_set<std::string> seen;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto f = detail::split_tsv(line);
    if (f.size() != 6) throw IoError("expected 6 fields, got line: '" + line + "'");
    LabeledSample s;
    s.id = f[0];
    s.text = f[1];
    s.label = parse_target_label(f[2]);
    if (!f[3].empty()) s.annotator_label = parse_target_label(f[3]);
    auto prov = provenance_from_string(f[4]);
    if (!prov) throw IoError("bad provenance: '" + f[4] + "'");
    s.provenance = *prov;
    s.audit = detail::audit_from_string(f[5]);
    if (!seen.insert(s.id).second)
      throw IoError("duplicate sample id: '" + s.id + "'");
    ds.push_back(std::move(s));
  }
  return ds;
}

inline Dataset read_dataset(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path.string());
  return read_dataset(is);
}

// --- ingest -----------------------------------------------------------------

// Column layout of a delimited claim export.
struct ColumnMap {
  char delimiter = '\t';
  int text_col = 0;
  int fine_label_col = 1;
  int actor_col = 2;
  int source_col = 3;
  bool has_header = true;
};

inline std::vector<RawClaim> read_claims(std::istream& is, const ColumnMap& cm) {
  std::vector<RawClaim> claims;
  std::string line;
  bool first = true;
  int max_col = std::max({cm.text_col, cm.fine_label_col, cm.actor_col, cm.source_col});
  while (std::getline(is, line)) {
    if (first && cm.has_header) {
      first = false;
      continue;
    }
    first = false;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    size_t pos = 0;
    while (true) {
      size_t d = line.find(cm.delimiter, pos);
      if (d == std::string::npos) {
        fields.push_back(line.substr(pos));
        break;
      }
      fields.push_back(line.substr(pos, d - pos));
      pos = d + 1;
    }
    if (static_cast<int>(fields.size()) <= max_col)
      throw IoError("claim line has too few columns: '" + line + "'");
    RawClaim c;
    c.text = fields[cm.text_col];
    if (c.text.empty()) throw IoError("claim with empty text");
    c.fine_label = fields[cm.fine_label_col];
    auto actor = actor_type_from_string(fields[cm.actor_col]);
    if (!actor) throw IoError("bad actor type: '" + fields[cm.actor_col] + "'");
    c.actor_type = *actor;
    c.source_id = fields[cm.source_col];
    claims.push_back(std::move(c));
  }
  return claims;
}

}  // namespace netzero
