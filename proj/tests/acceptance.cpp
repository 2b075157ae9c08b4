// One line per acceptance criterion; exits nonzero if any fails.

#include <cstdio>

#include "eulerconf/verification.hpp"

int main() {
  using eulerconf::verification::CriterionResult;
  int failed = 0;
  eulerconf::verification::run_acceptance(
      eulerconf::verification::kDefaultSeed, [&](const CriterionResult& r) {
        std::printf("%s criterion %2d  %s: %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
        std::fflush(stdout);
        failed += !r.passed;
      });
  std::printf("%d/%d criteria passed\n", eulerconf::verification::kCriterionCount - failed,
              eulerconf::verification::kCriterionCount);
  return failed == 0 ? 0 : 1;
}
