#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "sst/real.hpp"

namespace sst {

enum class VerifyLevel { Quick, Full };

// Harness fault injection (sensitivity self-test of the suite).
enum class VerifyFault { None, PsiPrime };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  bool skipped = false;
  std::string detail;  // measured values and tolerances
  double seconds = 0;
};

struct VerifyReport {
  std::vector<CriterionResult> results;
  bool all_pass = true;
  double total_seconds = 0;
};

// Runs the verification matrix.  Quick excludes the n = 1e5 sweeps and the
// 1e5-sample Monte Carlo criteria.  One line per criterion is streamed to
// `progress` when given.
VerifyReport verify_suite(VerifyLevel level, std::ostream* progress = nullptr,
                          VerifyFault fault = VerifyFault::None, uint64_t seed = 20240913);

}  // namespace sst
