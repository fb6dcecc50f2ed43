#pragma once

#include "fractsob/geometry.hpp"

#include <limits>

namespace fractsob {

// Which symbolic form of the failure inequality to evaluate. All three are
// the same condition s(D+1) > D/p + 2 up to a positive factor; the family
// forms spell it with the family's own logarithm constants.
enum class RegionForm { general, sg, vicsek };

// Exactly one of s (in (0,1)) and alpha (in (0,2), alpha = 2s) is given;
// p must exceed 1 and may be infinite.
struct RegionParams {
  double s = std::numeric_limits<double>::quiet_NaN();
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double p = std::numeric_limits<double>::infinity();
};

struct RegionVerdict {
  double s = 0.0, alpha = 0.0, p = 0.0;
  RegionForm form = RegionForm::general;
  bool in_region = false;    // the square of some member escapes the space
  double margin = 0.0;       // lhs - rhs of the selected inequality form
  double s_star = 0.0;       // threshold s at this p (same in every form)
  bool embedding_ok = false; // sup-norm embedding condition s(D+1) > D/p
  double embedding_margin = 0.0;
};

RegionVerdict region_check(const IfsSpec& spec, const RegionParams& params,
                           RegionForm form = RegionForm::general);

// Smallest p for which the failure region meets s < 1 on the gasket:
// log3 / (2 log3 - log5).
double sg_nonempty_p_threshold();

// Search for the smallest branching exponent N >= 2 putting V(L,N) into the
// failure region at (s,p). Soluble exactly when sp > 1; an unreachable
// target reports found = false rather than throwing.
struct VicsekSearchResult {
  double s = 0.0, p = 0.0;
  int L = 1;
  int n_max = 0;
  bool found = false;
  int N = 0;
  double margin = 0.0;  // inequality margin at N (when found)
};

VicsekSearchResult vicsek_find_n(double s, double p, int L = 1, int n_max = 64);

}  // namespace fractsob
