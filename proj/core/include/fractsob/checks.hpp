#pragma once

#include <string>
#include <vector>

namespace fractsob {

// One line of the invariant suite: what was measured, the worst deviation
// observed, and the limit it was held to.
struct CheckResult {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct CheckOptions {
  int spectral_level = 4;  // dense spectral identities run here
  int markov_level = 5;    // sub-Markov / rigidity checks run here
  int trials = 20;
  unsigned seed = 0;
};

// Runs the full structural invariant suite over both families: nesting,
// determinism, mass conservation, spectral mapping, semigroup, resolvent
// identity, Markov positivity, Dirichlet gap, eigensolver contracts, the
// harmonic energy fixed point, the cell rigidity bound, and decay-fit
// recovery. Every result names its tolerance.
std::vector<CheckResult> run_invariant_suite(const CheckOptions& opts = {});

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace fractsob
