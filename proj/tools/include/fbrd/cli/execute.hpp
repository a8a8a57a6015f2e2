#pragma once

// Runs a validated Command and turns the results into byte-deterministic
// artifacts. Nothing here touches the filesystem except emit().

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "fbrd/cli/command.hpp"

namespace fbrd::cli {

/// JSON text with insertion-ordered keys, 2-space indent, %.17g numbers,
/// null for non-finite values and a trailing LF.
[[nodiscard]] std::string dump_json(const json& j);

struct Artifact {
  /// Appended to the output stem, e.g. ".json" or "_t12.5.csv".
  std::string suffix;
  Format format = Format::json;
  std::string content;
};

struct Outcome {
  std::vector<Artifact> artifacts;
  /// False when verify found a failing check.
  bool success = true;
};

/// Raised by execute() when a compute module fails; the message names the
/// subcommand and its parameters.
class ExecutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Verify writes one line per check to `progress` as it goes.
[[nodiscard]] Outcome execute(const Command& c, std::ostream* progress = nullptr);

/// With an output path every artifact goes to path + suffix. Without one the
/// first artifact in the requested format (or the first artifact) is written
/// to `out`.
void emit(const Outcome& o, const Output& output, std::ostream& out);

}  // namespace fbrd::cli
