#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mto {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured quantity (error, deficit, order ...)
  double tolerance = 0.0;
  int failure_code = 2;    // exit status contributed on failure: 2 identity/deficit, 3 convergence order
};

/// Quick invariant suite over every module. Deterministic for a given seed.
std::vector<CheckResult> run_selftest(std::uint64_t seed = 1);

}  // namespace mto
