#pragma once

#include <cctype>
#include <filesystem>
#include <fstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "netzero/errors.hpp"

namespace netzero {

// Abbreviations whose trailing period must not end a sentence.
class AbbreviationList {
 public:
  static AbbreviationList builtin() {
    AbbreviationList a;
    for (const char* s :
         {"mr", "mrs", "ms", "dr", "prof", "inc", "ltd", "corp", "co", "llc",
          "plc", "vs", "etc", "approx", "no", "fig", "st", "jr", "sr", "e.g",
          "i.e", "u.s", "u.k", "dept", "est", "min", "max", "q1", "q2", "q3",
          "q4", "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept",
          "oct", "nov", "dec"})
      a.set_.insert(s);
    return a;
  }

  static AbbreviationList load(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open abbreviation list: " + path.string());
    AbbreviationList a;
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty() || line[0] == '#') continue;
      a.set_.insert(lower(line));
    }
    return a;
  }

  bool contains(const std::string& word) const {
    return set_.contains(lower(word));
  }

 private:
  static std::string lower(std::string s) {
    for (char& c : s)
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  }

  std::unordered_set<std::string> set_;
};

// Rule-based sentence splitter: terminal punctuation (. ! ?) followed by
// whitespace ends a sentence, unless the period closes a decimal, an
// abbreviation or a single-letter initial. Non-whitespace content is
// preserved verbatim inside the emitted sentences.
inline std::vector<std::string> split_sentences(
    const std::string& body, const AbbreviationList& abbrev) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    size_t b = cur.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
      cur.clear();
      return;
    }
    size_t e = cur.find_last_not_of(" \t\r\n");
    out.push_back(cur.substr(b, e - b + 1));
    cur.clear();
  };

  for (size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    cur.push_back(c);
    if (c != '.' && c != '!' && c != '?') continue;

    // allow closing quotes/brackets between the terminator and whitespace
    size_t j = i + 1;
    while (j < body.size() &&
           (body[j] == '"' || body[j] == '\'' || body[j] == ')'))
      cur.push_back(body[j++]);
    bool at_end = j >= body.size();
    bool ws_next = !at_end && std::isspace(static_cast<unsigned char>(body[j]));
    if (!at_end && !ws_next) {
      i = j - 1;
      continue;  // e.g. "3.5" or "U.S." mid-token
    }

    if (c == '.') {
      // word immediately before the period
      size_t w_end = cur.size();
      while (w_end > 0 && cur[w_end - 1] == '.') --w_end;
      size_t w_begin = w_end;
      while (w_begin > 0 &&
             !std::isspace(static_cast<unsigned char>(cur[w_begin - 1])))
        --w_begin;
      std::string word = cur.substr(w_begin, w_end - w_begin);
      bool guard = false;
      if (word.size() == 1 &&
          std::isupper(static_cast<unsigned char>(word[0]))) {
        guard = true;  // initial like "J."
      } else if (abbrev.contains(word)) {
        guard = true;
      }
      if (guard) {
        i = j - 1;
        continue;
      }
    }
    flush();
    i = j - 1;
  }
  flush();
  return out;
}

inline std::vector<std::string> split_sentences(const std::string& body) {
  static const AbbreviationList abbrev = AbbreviationList::builtin();
  return split_sentences(body, abbrev);
}

}  // namespace netzero
