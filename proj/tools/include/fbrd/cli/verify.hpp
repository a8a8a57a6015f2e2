#pragma once

// Acceptance checks 1-10. Shared by `fbrd verify` and the acceptance test
// binary so both report the same measurements.

#include <functional>
#include <string>
#include <vector>

#include "fbrd/cli/command.hpp"

namespace fbrd::cli {

struct PresetGrid {
  double dx = 0.1;
};

[[nodiscard]] PresetGrid preset_grid(Preset p) noexcept;

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double limit_seconds = 0.0;
  /// Short human-readable measurement summary.
  std::string detail;
  json measured = json::object();
};

struct VerifyReport {
  Preset preset = Preset::desk;
  std::vector<CheckResult> checks;
  [[nodiscard]] bool all_pass() const noexcept;
};

/// One line: "[PASS] 3 kpp-threshold (0.41 s / 5 s): ..."
[[nodiscard]] std::string format_line(const CheckResult& r);

[[nodiscard]] CheckResult run_check(int id, Preset preset);

[[nodiscard]] VerifyReport run_verify(const VerifyArgs& a,
                                      const std::function<void(const CheckResult&)>& on_result = {});

[[nodiscard]] json to_json(const VerifyReport& r);

}  // namespace fbrd::cli
