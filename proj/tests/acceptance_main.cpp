// Acceptance gate: runs every end-to-end check and prints one line per
// criterion.  Exits 0 only when all of them pass.

#include <cstdio>

#include "coh1/checks.hpp"

int main() {
  const auto results = coh1::run_acceptance_checks("");
  int failed = 0;
  for (const auto& res : results) {
    std::printf("%s  %-32s", res.passed ? "PASS" : "FAIL", res.id.c_str());
    if (!res.detail.empty()) std::printf("  (%s)", res.detail.c_str());
    std::printf("\n");
    if (!res.passed) ++failed;
  }
  std::printf("%zu/%zu acceptance checks passed\n", results.size() - failed,
              results.size());
  return failed == 0 ? 0 : 1;
}
