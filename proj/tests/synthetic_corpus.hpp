#pragma once

// Synthetic earnings-call corpus with an injected post-2019 net-zero trend.
// Shared by the corpus unit tests and the acceptance suite.

#include <random>
#include <string>
#include <vector>

#include "netzero/corpus.hpp"

namespace netzero::testing {

inline std::vector<Document> synthetic_corpus(size_t n_docs, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> filler = {
      "Revenue grew in the quarter.",
      "We opened two new facilities.",
      "Customer demand stayed strong.",
      "Margins improved on cost discipline.",
      "The outlook for next quarter is stable.",
      "We hired across all regions.",
      "Capital expenditure was in line with plan.",
      "The board declared a dividend."};
  std::vector<std::string> reduction = {
      "We plan to reduce CO2 emissions 30% by 2030.",
      "Our emissions reduction program is on track.",
      "We will cut carbon emissions against the 2015 baseline."};
  std::vector<std::string> netzero = {
      "We commit to net zero emissions by 2050.",
      "Our net zero roadmap was approved this quarter.",
      "The company targets carbon neutrality by 2045."};

  std::vector<Document> docs;
  for (size_t d = 0; d < n_docs; ++d) {
    Document doc;
    int year = 2014 + static_cast<int>(d % 10);  // 2014..2023
    int q = 1 + static_cast<int>(rng() % 4);
    doc.doc_id = "ecc-" + std::to_string(1000 + d);
    doc.firm_id = "firm-" + std::to_string(d % 7);
    doc.quarter = {year, q};
    char date[16];
    std::snprintf(date, sizeof date, "%04d-%02d-15", year, q * 3 - 1);
    doc.event_date = date;

    std::string body;
    size_t n_sent = 12 + rng() % 8;
    for (size_t s = 0; s < n_sent; ++s) body += filler[rng() % filler.size()] + " ";
    // reduction talk throughout the period
    body += reduction[rng() % reduction.size()];
    body += " ";
    // the injected trend: net-zero talk only after 2019, and plenty of it
    if (year >= 2019) {
      size_t n_nz = 2 + rng() % 2;
      for (size_t s = 0; s < n_nz; ++s) body += netzero[rng() % netzero.size()] + " ";
    }
    doc.body = body;
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace netzero::testing
