#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <string>
#include <unordered_map>

#include "netzero/dataset.hpp"
#include "netzero/errors.hpp"
#include "netzero/labels.hpp"

namespace netzero {

// Maps tracker sub-labels ("zero carbon", "climate neutral", ...) onto the
// two target classes. The mapping ships as an editable data file; claims are
// always targets, so NONE never appears on the right-hand side.
class SublabelMap {
 public:
  static SublabelMap builtin() {
    SublabelMap m;
    for (const char* s :
         {"net zero", "net-zero", "zero carbon", "zero-carbon",
          "climate neutral", "climate neutrality", "carbon neutral",
          "carbon neutrality", "net negative", "carbon negative",
          "climate positive", "zero emissions", "emissions free",
          "carbon free", "ghg neutral"})
      m.map_[s] = TargetLabel::NetZero;
    for (const char* s :
         {"reduction", "emissions reduction", "emission reduction",
          "reduction target", "absolute reduction", "relative reduction",
          "intensity reduction", "reduction vs baseline year",
          "reduction vs base year", "reduction vs bau",
          "reduction vs intensity", "halve emissions"})
      m.map_[s] = TargetLabel::Reduction;
    return m;
  }

  static SublabelMap load(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open sub-label map: " + path.string());
    SublabelMap m;
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty() || line[0] == '#') continue;
      size_t tab = line.find('\t');
      if (tab == std::string::npos)
        throw IoError("sub-label map line missing tab: '" + line + "'");
      TargetLabel l = parse_target_label(line.substr(tab + 1));
      if (l == TargetLabel::None)
        throw IoError("sub-label map must not map to NONE: '" + line + "'");
      m.map_[normalize(line.substr(0, tab))] = l;
    }
    return m;
  }

  TargetLabel aggregate(const std::string& fine_label) const {
    auto it = map_.find(normalize(fine_label));
    if (it == map_.end()) throw UnknownSubLabelError(fine_label);
    return it->second;
  }

  bool contains(const std::string& fine_label) const {
    return map_.contains(normalize(fine_label));
  }

  size_t size() const { return map_.size(); }

  void save(const std::filesystem::path& path) const {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write sub-label map: " + path.string());
    os << "# sub-label\ttarget label\n";
    std::vector<std::pair<std::string, TargetLabel>> sorted(map_.begin(), map_.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [k, v] : sorted) os << k << '\t' << to_string(v) << '\n';
  }

 private:
  static std::string normalize(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
      return static_cast<char>(std::tolower(c));
    });
    // trim
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
  }

  std::unordered_map<std::string, TargetLabel> map_;
};

inline TargetLabel aggregate_label(const std::string& fine_label,
                                   const SublabelMap& map) {
  return map.aggregate(fine_label);
}

// Builds labeled samples from tracker claims: clean, label via the sub-label
// map, assign stable ids. Length filtering is a separate step.
inline Dataset claims_to_samples(const std::vector<RawClaim>& claims,
                                 const SublabelMap& map,
                                 const std::string& id_prefix = "trk") {
  Dataset ds;
  ds.reserve(claims.size());
  size_t n = 0;
  for (const auto& c : claims) {
    LabeledSample s;
    s.id = id_prefix + "-" + std::to_string(n++);
    s.text = clean_text(c.text);
    s.label = map.aggregate(c.fine_label);
    s.annotator_label = s.label;
    s.provenance = Provenance::Tracker;
    ds.push_back(std::move(s));
  }
  return ds;
}

}  // namespace netzero
