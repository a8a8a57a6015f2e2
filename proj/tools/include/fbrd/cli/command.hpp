#pragma once

// Validated command model for the fbrd tool. A Command is built from one
// canonical JSON document; command-line flags are merged into that document
// before parsing, so both routes share the same checks.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "fbrd/error.hpp"
#include "fbrd/pde.hpp"
#include "fbrd/profiles.hpp"
#include "fbrd/shooting.hpp"

namespace fbrd::cli {

using json = nlohmann::ordered_json;

/// Schema violation or out-of-range value; the message starts with the
/// JSON path of the offending field.
class ConfigError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

enum class Verb { speeds, wave, stationary, pde, sweep, verify };
enum class Format { csv, json };

struct Output {
  /// Path stem; empty means stdout.
  std::string path;
  Format format = Format::json;
  friend bool operator==(const Output&, const Output&) = default;
};

struct SpeedsArgs {
  double alpha = 0.5;
  double tol = kDefaultSpeedTol;
  friend bool operator==(const SpeedsArgs&, const SpeedsArgs&) = default;
};

enum class WaveKind { bistable, plateau, monostable, pushed };

struct WaveArgs {
  double alpha = 0.5;
  WaveKind kind = WaveKind::bistable;
  /// Required for monostable and pushed.
  std::optional<double> c;
  double L = 0.0;
  double step = 1e-3;
  double tol = kDefaultSpeedTol;
  friend bool operator==(const WaveArgs&, const WaveArgs&) = default;
};

struct StationaryArgs {
  double alpha = 0.5;
  StationaryKind kind = StationaryKind::bump;
  double L = 0.0;
  std::optional<double> u0;
  double step = 1e-3;
  friend bool operator==(const StationaryArgs&, const StationaryArgs&) = default;
};

struct GridArgs {
  double x_min = -150.0;
  double x_max = 150.0;
  double dx = 0.1;
  friend bool operator==(const GridArgs&, const GridArgs&) = default;
};

enum class InitialKind { tanh_front, sech_dip, exp_dip, constant, profile, table };

/// Initial datum as configured. Only the fields of `kind` are serialized.
struct InitialArgs {
  InitialKind kind = InitialKind::tanh_front;
  double amplitude = 0.5;
  double offset = 0.0;
  double steepness = 0.1;
  double orientation = -1.0;
  double center = 0.0;
  double base = 1.0;
  double depth = 0.7;
  double width = 0.005;
  double rate = 2.0;
  double value = 0.0;
  // profile: a stationary or bistable profile of the run's alpha
  std::string profile = "bump";
  double profile_step = 0.01;
  double profile_L = 0.0;
  double shift = 0.0;
  double scale = 1.0;
  std::vector<double> x;
  std::vector<double> u;
  friend bool operator==(const InitialArgs&, const InitialArgs&) = default;
};

struct PdeArgs {
  double alpha = 0.5;
  GridArgs grid;
  double dt_factor = 0.4;
  double T = 1.0;
  /// Explicit probe times; when empty, every `probe_every` from 0 to T.
  std::vector<double> probes;
  std::optional<double> probe_every;
  InitialArgs initial;
  std::optional<double> track_level;
  friend bool operator==(const PdeArgs&, const PdeArgs&) = default;
};

enum class SweepParameter { alpha, c };
enum class SweepQuantity {
  c_bistable,
  c_pushed_min,
  c_monotone_min,
  bump_max,
  dip_min,
  front_speed,
  endpoint_minus,
  endpoint_plus,
};

struct SweepArgs {
  SweepParameter parameter = SweepParameter::alpha;
  double lo = 0.1;
  double hi = 0.6;
  int count = 11;
  SweepQuantity quantity = SweepQuantity::c_bistable;
  /// Fixed alpha for sweeps over c.
  std::optional<double> alpha;
  double tol = kDefaultSpeedTol;
  /// front_speed runs: tanh front 1/2 (tanh(-0.1 x) + 1) on [-half_width, half_width].
  double dx = 0.1;
  double T = 200.0;
  double half_width = 150.0;
  friend bool operator==(const SweepArgs&, const SweepArgs&) = default;
};

enum class Preset { desk, strict };

struct VerifyArgs {
  Preset preset = Preset::desk;
  /// Criterion ids to run; empty means all.
  std::vector<int> only;
  friend bool operator==(const VerifyArgs&, const VerifyArgs&) = default;
};

using Options = std::variant<SpeedsArgs, WaveArgs, StationaryArgs, PdeArgs, SweepArgs, VerifyArgs>;

struct Command {
  Options options;
  Output output;

  [[nodiscard]] Verb verb() const noexcept { return static_cast<Verb>(options.index()); }
  friend bool operator==(const Command&, const Command&) = default;
};

[[nodiscard]] std::string_view to_string(Verb v) noexcept;
[[nodiscard]] std::string_view to_string(Format f) noexcept;
[[nodiscard]] std::string_view to_string(WaveKind k) noexcept;
[[nodiscard]] std::string_view to_string(InitialKind k) noexcept;
[[nodiscard]] std::string_view to_string(SweepParameter p) noexcept;
[[nodiscard]] std::string_view to_string(SweepQuantity q) noexcept;
[[nodiscard]] std::string_view to_string(Preset p) noexcept;

[[nodiscard]] Command parse_config_json(const json& doc);
/// Parses JSON text; syntax errors are reported as ConfigError.
[[nodiscard]] Command parse_config(std::string_view text);

/// Canonical document; parse_config_json(to_json(c)) == c.
[[nodiscard]] json to_json(const Command& c);

[[nodiscard]] InitialDatum make_datum(const InitialArgs& a, double alpha);
[[nodiscard]] std::vector<double> probe_times(const PdeArgs& a);

}  // namespace fbrd::cli
