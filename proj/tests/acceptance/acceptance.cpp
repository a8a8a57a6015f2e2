// Prints one line per acceptance criterion and fails if any criterion fails.
// Usage: fbrd_acceptance [--strict]

#include <cstring>
#include <iostream>

#include "fbrd/cli/verify.hpp"

int main(int argc, char** argv) {
  fbrd::cli::VerifyArgs a;
  if (argc > 1 && std::strcmp(argv[1], "--strict") == 0) a.preset = fbrd::cli::Preset::strict;
  const auto report = fbrd::cli::run_verify(a, [](const fbrd::cli::CheckResult& r) {
    std::cout << fbrd::cli::format_line(r) << std::endl;
  });
  std::cout << (report.all_pass() ? "all criteria passed" : "some criteria FAILED") << std::endl;
  return report.all_pass() ? 0 : 1;
}
