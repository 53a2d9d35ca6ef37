// One line per acceptance criterion; exit status 1 if any fails.
// Usage: acceptance [seed] [--json]

#include <cstdio>
#include <cstring>
#include <iostream>
#include <string>

#include "klein/verify.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  bool json = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--json") == 0) {
      json = true;
    } else {
      seed = std::stoull(argv[i]);
    }
  }
  int failed = 0;
  for (int id = 1; id <= klein::kSuiteCount; ++id) {
    const klein::SuiteResult r = klein::run_suite(id, seed);
    std::printf("[%s] criterion %2d %-44s %8.3f s (budget %g s)\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.time_budget);
    if (json || !r.passed) std::cout << "    " << r.details.dump() << '\n';
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  std::printf("%d/%d criteria passed\n", klein::kSuiteCount - failed, klein::kSuiteCount);
  return failed == 0 ? 0 : 1;
}
