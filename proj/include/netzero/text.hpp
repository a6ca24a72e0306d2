#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace netzero {

namespace detail {

inline bool is_url_start(std::string_view s, size_t i) {
  auto starts = [&](std::string_view p) {
    if (s.size() - i < p.size()) return false;
    for (size_t k = 0; k < p.size(); ++k) {
      if (std::tolower(static_cast<unsigned char>(s[i + k])) != p[k]) return false;
    }
    return true;
  };
  return starts("http://") || starts("https://") || starts("www.");
}

// Printable ASCII kept by the cleaner: letters, digits and the punctuation
// that carries meaning in target claims ("30%", "1.5°C", "2005-levels").
inline bool keep_ascii(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '.': case ',': case ';': case ':': case '%': case '(': case ')':
    case '-': case '\'': case '"': case '/': case '&': case '$': case '+':
    case '?': case '!':
      return true;
    default:
      return false;
  }
}

// Decodes one UTF-8 codepoint starting at i; advances i past it.
// Malformed bytes decode as 0xFFFD and advance one byte.
inline uint32_t decode_utf8(std::string_view s, size_t& i) {
  unsigned char c = s[i];
  if (c < 0x80) { ++i; return c; }
  int extra = (c >= 0xF0) ? 3 : (c >= 0xE0) ? 2 : (c >= 0xC0) ? 1 : -1;
  if (extra < 0 || i + extra >= s.size()) { ++i; return 0xFFFD; }
  uint32_t cp = c & (0x3F >> extra);
  for (int k = 1; k <= extra; ++k) {
    unsigned char cc = s[i + k];
    if ((cc & 0xC0) != 0x80) { ++i; return 0xFFFD; }
    cp = (cp << 6) | (cc & 0x3F);
  }
  i += extra + 1;
  return cp;
}

inline bool keep_codepoint(uint32_t cp) {
  if (cp == 0x00B0) return true;                    // degree sign
  if (cp == 0x20AC || cp == 0x00A3 || cp == 0x00A5) return true;  // currency
  if (cp >= 0x00C0 && cp <= 0x024F && cp != 0x00D7 && cp != 0x00F7)
    return true;                                    // Latin letters w/ diacritics
  if (cp >= 0x0370 && cp <= 0x03FF) return true;    // Greek
  if (cp == 0x2019 || cp == 0x2018) return true;    // curly apostrophes
  return false;
}

inline void append_utf8(std::string& out, uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace detail

// Removes URLs and special characters, collapses whitespace, trims.
// Idempotent: cleaning a cleaned string is a no-op.
inline std::string clean_text(std::string_view text) {
  std::string kept;
  kept.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    if (detail::is_url_start(text, i)) {
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      continue;
    }
    unsigned char c = text[i];
    if (c < 0x80) {
      if (std::isspace(c)) {
        kept.push_back(' ');
      } else if (detail::keep_ascii(static_cast<char>(c))) {
        kept.push_back(static_cast<char>(c));
      }
      ++i;
    } else {
      uint32_t cp = detail::decode_utf8(text, i);
      if (detail::keep_codepoint(cp)) detail::append_utf8(kept, cp);
    }
  }
  // collapse runs of spaces, trim
  std::string out;
  out.reserve(kept.size());
  bool pending_space = false;
  for (char c : kept) {
    if (c == ' ') {
      if (!out.empty()) pending_space = true;
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

// Whitespace-delimited tokens of the cleaned text.
inline std::vector<std::string_view> words(std::string_view cleaned) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < cleaned.size()) {
    while (i < cleaned.size() && cleaned[i] == ' ') ++i;
    size_t start = i;
    while (i < cleaned.size() && cleaned[i] != ' ') ++i;
    if (i > start) out.push_back(cleaned.substr(start, i - start));
  }
  return out;
}

inline size_t word_count(std::string_view text) {
  return words(clean_text(text)).size();
}

}  // namespace netzero
