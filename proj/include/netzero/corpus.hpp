#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "netzero/backend.hpp"
#include "netzero/errors.hpp"
#include "netzero/labels.hpp"
#include "netzero/plot.hpp"
#include "netzero/sentences.hpp"

namespace netzero {

struct Quarter {
  int year = 0;
  int q = 0;  // 1..4

  bool operator==(const Quarter&) const = default;
  auto operator<=>(const Quarter&) const = default;
};

struct Document {
  std::string doc_id;
  std::string firm_id;
  std::string event_date;  // YYYY-MM-DD
  Quarter quarter;
  std::string body;
};

struct SentenceRecord {
  std::string doc_id;
  int index = 0;
  std::string text;
  bool is_climate = false;
  TargetLabel target = TargetLabel::None;  // != NONE only when is_climate
};

struct EventShare {
  std::string doc_id;
  double share_net_zero = 0;
  double share_reduction = 0;
  size_t n_sentences = 0;  // denominator: ALL sentences of the event
};

struct YearlyIndex {
  int year = 0;
  double mean_share_net_zero = 0;
  double mean_share_reduction = 0;
  size_t n_events = 0;
};

// --- document files ---------------------------------------------------------
// One document per file: metadata header lines, blank line, body.
//   doc_id: <id>
//   firm_id: <id>
//   event_date: YYYY-MM-DD
//   quarter: YYYYQn
//   <blank>
//   <body text>

inline Quarter parse_quarter(const std::string& s) {
  size_t qpos = s.find('Q');
  if (qpos == std::string::npos) qpos = s.find('q');
  if (qpos == std::string::npos || qpos == 0)
    throw IoError("bad quarter: '" + s + "'");
  Quarter q;
  q.year = std::stoi(s.substr(0, qpos));
  q.q = std::stoi(s.substr(qpos + 1));
  if (q.q < 1 || q.q > 4) throw IoError("bad quarter: '" + s + "'");
  return q;
}

inline void validate_document(const Document& d) {
  if (d.body.empty()) throw IoError("document " + d.doc_id + " has empty body");
  if (d.event_date.size() != 10 || d.event_date[4] != '-' || d.event_date[7] != '-')
    throw IoError("document " + d.doc_id + " has bad event_date '" + d.event_date + "'");
  int year = std::stoi(d.event_date.substr(0, 4));
  int month = std::stoi(d.event_date.substr(5, 2));
  if (year != d.quarter.year || (month - 1) / 3 + 1 != d.quarter.q)
    throw IoError("document " + d.doc_id + " event_date inconsistent with quarter");
}

inline Document read_document(std::istream& is, const std::string& origin = "") {
  Document d;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) break;
    size_t colon = line.find(": ");
    if (colon == std::string::npos)
      throw IoError("bad document header line in " + origin + ": '" + line + "'");
    std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 2);
    if (key == "doc_id") d.doc_id = value;
    else if (key == "firm_id") d.firm_id = value;
    else if (key == "event_date") d.event_date = value;
    else if (key == "quarter") d.quarter = parse_quarter(value);
    else throw IoError("unknown document header key '" + key + "' in " + origin);
  }
  std::ostringstream body;
  body << is.rdbuf();
  d.body = body.str();
  while (!d.body.empty() && std::isspace(static_cast<unsigned char>(d.body.back())))
    d.body.pop_back();
  validate_document(d);
  return d;
}

inline Document read_document(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open document: " + path.string());
  return read_document(is, path.string());
}

inline void write_document(const Document& d, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write document: " + path.string());
  os << "doc_id: " << d.doc_id << '\n'
     << "firm_id: " << d.firm_id << '\n'
     << "event_date: " << d.event_date << '\n'
     << "quarter: " << d.quarter.year << 'Q' << d.quarter.q << "\n\n"
     << d.body << '\n';
}

// Sorted by filename: deterministic corpus order.
inline std::vector<Document> load_corpus(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<Document> docs;
  docs.reserve(files.size());
  for (const auto& f : files) docs.push_back(read_document(f));
  return docs;
}

// --- two-stage classification -----------------------------------------------

// Stage 1 marks climate relevance; stage 2 assigns target labels to climate
// sentences only. Label index 0 of the climate model means "climate".
inline std::vector<SentenceRecord> two_stage_classify(
    const std::string& doc_id, const std::vector<std::string>& sentences,
    const TextClassifier& climate_model, const TextClassifier& target_model) {
  std::vector<SentenceRecord> records;
  records.reserve(sentences.size());
  for (size_t i = 0; i < sentences.size(); ++i) {
    SentenceRecord r;
    r.doc_id = doc_id;
    r.index = static_cast<int>(i);
    r.text = sentences[i];
    records.push_back(std::move(r));
  }
  if (sentences.empty()) return records;

  std::vector<Prediction> climate;
  try {
    climate = climate_model.predict(sentences);
  } catch (const std::exception& e) {
    throw Error("stage-1 climate model failed on document " + doc_id + ": " + e.what());
  }
  std::vector<size_t> climate_idx;
  std::vector<std::string> climate_texts;
  for (size_t i = 0; i < sentences.size(); ++i) {
    if (climate[i].label == 0) {
      records[i].is_climate = true;
      climate_idx.push_back(i);
      climate_texts.push_back(sentences[i]);
    }
  }
  if (climate_texts.empty()) return records;  // stage 2 never invoked

  std::vector<Prediction> targets;
  try {
    targets = target_model.predict(climate_texts);
  } catch (const std::exception& e) {
    throw Error("stage-2 target model failed on document " + doc_id + ": " + e.what());
  }
  for (size_t k = 0; k < climate_idx.size(); ++k)
    records[climate_idx[k]].target = static_cast<TargetLabel>(targets[k].label);
  return records;
}

// --- aggregation ------------------------------------------------------------

inline EventShare event_share(const std::vector<SentenceRecord>& records) {
  if (records.empty()) throw EmptyEventError();
  EventShare s;
  s.doc_id = records.front().doc_id;
  for (const auto& r : records) {
    if (r.doc_id != s.doc_id)
      throw InputShapeError("event_share got records from multiple documents");
    if (r.target == TargetLabel::NetZero) s.share_net_zero += 1;
    if (r.target == TargetLabel::Reduction) s.share_reduction += 1;
  }
  s.n_sentences = records.size();
  s.share_net_zero /= static_cast<double>(s.n_sentences);
  s.share_reduction /= static_cast<double>(s.n_sentences);
  return s;
}

struct DatedEventShare {
  EventShare share;
  Quarter quarter;
};

enum class YearlyAveraging {
  EventWeighted,   // unweighted mean over all events of the year
  QuarterWeighted  // mean of quarterly means
};

inline std::vector<YearlyIndex> yearly_index(
    const std::vector<DatedEventShare>& events,
    YearlyAveraging mode = YearlyAveraging::EventWeighted) {
  std::map<int, std::map<int, std::vector<const EventShare*>>> by_year_quarter;
  for (const auto& e : events)
    by_year_quarter[e.quarter.year][e.quarter.q].push_back(&e.share);

  std::vector<YearlyIndex> out;
  for (const auto& [year, quarters] : by_year_quarter) {
    YearlyIndex idx;
    idx.year = year;
    if (mode == YearlyAveraging::EventWeighted) {
      for (const auto& [q, shares] : quarters) {
        for (const auto* s : shares) {
          idx.mean_share_net_zero += s->share_net_zero;
          idx.mean_share_reduction += s->share_reduction;
          ++idx.n_events;
        }
      }
      idx.mean_share_net_zero /= static_cast<double>(idx.n_events);
      idx.mean_share_reduction /= static_cast<double>(idx.n_events);
    } else {
      double nz = 0, red = 0;
      for (const auto& [q, shares] : quarters) {
        double qnz = 0, qred = 0;
        for (const auto* s : shares) {
          qnz += s->share_net_zero;
          qred += s->share_reduction;
          ++idx.n_events;
        }
        nz += qnz / static_cast<double>(shares.size());
        red += qred / static_cast<double>(shares.size());
      }
      idx.mean_share_net_zero = nz / static_cast<double>(quarters.size());
      idx.mean_share_reduction = red / static_cast<double>(quarters.size());
    }
    out.push_back(idx);
  }
  return out;  // sorted by year via the map
}

// --- emission ---------------------------------------------------------------

inline constexpr std::string_view kTimeseriesHeader =
    "year\tmean_share_net_zero\tmean_share_reduction\tn_events";

inline void emit_timeseries(const std::vector<YearlyIndex>& indices,
                            const std::filesystem::path& path, bool with_plot) {
  if (indices.empty()) throw InputError("no yearly indices to emit");
  std::ofstream os(path);
  if (!os) throw IoError("cannot write time series: " + path.string());
  os << kTimeseriesHeader << '\n';
  os << std::setprecision(17);
  for (const auto& idx : indices)
    os << idx.year << '\t' << idx.mean_share_net_zero << '\t'
       << idx.mean_share_reduction << '\t' << idx.n_events << '\n';
  os.close();

  if (with_plot) {
    PlotSeries nz{"net zero", "#1f77b4", {}, {}};
    PlotSeries red{"reduction", "#d62728", {}, {}};
    for (const auto& idx : indices) {
      nz.x.push_back(idx.year);
      nz.y.push_back(idx.mean_share_net_zero);
      red.x.push_back(idx.year);
      red.y.push_back(idx.mean_share_reduction);
    }
    auto plot_path = path;
    plot_path.replace_extension(".svg");
    write_line_plot({nz, red}, "Target sentences as a share of all sentences",
                    plot_path);
  }
}

inline std::vector<YearlyIndex> read_timeseries(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open time series: " + path.string());
  std::string line;
  if (!std::getline(is, line) || line != kTimeseriesHeader)
    throw IoError("bad time series header in " + path.string());
  std::vector<YearlyIndex> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    YearlyIndex idx;
    ss >> idx.year >> idx.mean_share_net_zero >> idx.mean_share_reduction >>
        idx.n_events;
    if (!ss) throw IoError("bad time series line: '" + line + "'");
    out.push_back(idx);
  }
  return out;
}

// --- hand-check sampling ----------------------------------------------------

// All target-labeled climate sentences plus a seeded random fill of the
// remaining sentences, for offline review.
inline std::vector<SentenceRecord> sample_for_handcheck(
    const std::vector<SentenceRecord>& records, size_t n_random, uint64_t seed) {
  std::vector<SentenceRecord> targets, rest;
  for (const auto& r : records) {
    if (r.target != TargetLabel::None)
      targets.push_back(r);
    else
      rest.push_back(r);
  }
  std::mt19937_64 rng(seed);
  std::shuffle(rest.begin(), rest.end(), rng);
  if (rest.size() > n_random) rest.resize(n_random);
  // stable output order: targets first, then fill, each by (doc, index)
  auto by_pos = [](const SentenceRecord& a, const SentenceRecord& b) {
    return std::tie(a.doc_id, a.index) < std::tie(b.doc_id, b.index);
  };
  std::sort(targets.begin(), targets.end(), by_pos);
  std::sort(rest.begin(), rest.end(), by_pos);
  targets.insert(targets.end(), rest.begin(), rest.end());
  return targets;
}

inline void write_handcheck_file(const std::vector<SentenceRecord>& sample,
                                 const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write hand-check file: " + path.string());
  os << "doc_id\tindex\ttext\tis_climate\ttarget\tcorrection\tnote\n";
  for (const auto& r : sample) {
    std::string text = r.text;
    std::replace(text.begin(), text.end(), '\t', ' ');
    os << r.doc_id << '\t' << r.index << '\t' << text << '\t'
       << (r.is_climate ? 1 : 0) << '\t' << to_string(r.target) << "\t\t\n";
  }
}

}  // namespace netzero
