// Acceptance suite: runs the full verification matrix and prints one
// pass/fail line per criterion.
#include <cstdio>
#include <iostream>

#include "sst/verify.hpp"

int main(int argc, char** argv) {
  sst::VerifyLevel level = sst::VerifyLevel::Full;
  if (argc > 1 && std::string(argv[1]) == "--quick") level = sst::VerifyLevel::Quick;
  auto report = sst::verify_suite(level, &std::cout);
  std::printf("%s: %zu criteria, total %.1fs\n", report.all_pass ? "ALL PASS" : "FAILURES",
              report.results.size(), report.total_seconds);
  return report.all_pass ? 0 : 2;
}
