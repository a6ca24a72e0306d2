#pragma once

#include <array>
#include <vector>

#include "netzero/errors.hpp"
#include "netzero/labels.hpp"

namespace netzero {

struct AgreementReport {
  double raw_agreement = 0.0;  // fraction of equal positions
  double cohens_kappa = 0.0;   // (p_o - p_e) / (1 - p_e)
};

// Cohen's kappa with chance agreement from the two labelings' marginal label
// frequencies. When p_e == 1 both sides are constant and equal; kappa is 1.
inline AgreementReport compute_agreement(const std::vector<TargetLabel>& a,
                                         const std::vector<TargetLabel>& b) {
  if (a.size() != b.size())
    throw InputShapeError("label lists differ in length: " +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  if (a.empty()) throw InputShapeError("label lists are empty");

  const double n = static_cast<double>(a.size());
  size_t equal = 0;
  std::array<size_t, 3> ma{}, mb{};
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) ++equal;
    ma[static_cast<int>(a[i])]++;
    mb[static_cast<int>(b[i])]++;
  }
  AgreementReport r;
  r.raw_agreement = static_cast<double>(equal) / n;
  double pe = 0;
  for (int l = 0; l < 3; ++l)
    pe += (static_cast<double>(ma[l]) / n) * (static_cast<double>(mb[l]) / n);
  r.cohens_kappa = pe >= 1.0 ? 1.0 : (r.raw_agreement - pe) / (1.0 - pe);
  return r;
}

}  // namespace netzero
