#pragma once

#include <string>
#include <vector>

#include "squeeze/model.hpp"

namespace squeeze::cli {

struct Check {
  std::string name;
  bool passed = false;
  double residual = 0.0;  // measured quantity compared against tolerance
  double tolerance = 0.0;
  std::string detail;
};

// Invariant suite behind `squeeze-sim validate`. Evaluated at time t on the
// given configuration; the oracle-equivalence check uses the same couplings
// with the drive tuned onto resonance.
std::vector<Check> run_invariant_suite(const SystemParams& params, double t);

}  // namespace squeeze::cli
