// Acceptance gate: runs every verification claim and prints one line per
// criterion.  Exit status is nonzero if any claim fails.
#include <cstdio>

#include "njlab/verify.hpp"

int main() {
  const njl::VerifyReport report = njl::run_verify_suite();
  int failures = 0;
  for (const auto& c : report.claims) {
    const bool ok = c.status != njl::ClaimStatus::Fail;
    if (!ok) ++failures;
    std::printf("%s — %s: %s (%.0f ms)\n", ok ? "pass" : "FAIL",
                c.id.c_str(), c.details.c_str(), c.ms);
  }
  std::printf("%zu criteria, %d failure(s)\n", report.claims.size(), failures);
  return failures == 0 ? 0 : 1;
}
