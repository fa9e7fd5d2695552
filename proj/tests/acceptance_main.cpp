// Acceptance battery: one pass/fail line per criterion, nonzero exit on any
// failure. The same checks back the CLI's verify-all subcommand.
#include <cstdio>

#include "rwre/acceptance.hpp"
#include "rwre/parallel.hpp"

int main() {
  std::vector<rwre::CheckResult> results =
      rwre::run_acceptance(rwre::default_workers(), true);
  int failures = 0;
  for (const rwre::CheckResult& r : results)
    if (!r.pass) ++failures;
  std::printf("%zu checks, %d failed\n", results.size(), failures);
  return failures == 0 ? 0 : 1;
}
