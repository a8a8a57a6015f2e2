#pragma once

// Explicit finite differences for u_t = u_xx + f(u) with the cut-off
// reaction, plus the post-processing used to compare runs with the wave
// analysis: front tracking, support intervals, extinction.

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "fbrd/error.hpp"
#include "fbrd/profiles.hpp"

namespace fbrd {

struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  double dx = 0.1;
  std::size_t n = 0;

  /// n = round((x_max - x_min)/dx) + 1; the span must be a multiple of dx.
  [[nodiscard]] static Grid1D make(double x_min, double x_max, double dx);
  [[nodiscard]] double x(std::size_t i) const noexcept { return x_min + static_cast<double>(i) * dx; }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;
};

struct PdeState {
  Grid1D grid;
  std::vector<double> values;
  double time = 0.0;
  /// Total mass removed by clamping negative values to zero.
  double clamped_mass = 0.0;
};

/// amplitude * (tanh(orientation * steepness * (x - center)) + 1) + offset
struct TanhFront {
  double amplitude = 0.5;
  double offset = 0.0;
  double steepness = 0.1;
  double orientation = -1.0;
  double center = 0.0;
};
/// base - depth * sech(width * (x - center))
struct SechDip {
  double base = 1.0;
  double depth = 0.7;
  double width = 0.005;
  double center = 0.0;
};
/// base - depth * exp(-rate * |x - center|)
struct ExpDip {
  double base = 1.0;
  double depth = 0.7;
  double rate = 2.0;
  double center = 0.0;
};
struct ConstantDatum {
  double value = 0.0;
};
/// scale * profile(x - shift), constant beyond the sampled range.
struct ProfileDatum {
  WaveProfile profile;
  double shift = 0.0;
  double scale = 1.0;
};
/// Piecewise linear through (x, u), constant beyond the ends.
struct TableDatum {
  std::vector<double> x;
  std::vector<double> u;
};

using InitialDatum = std::variant<TanhFront, SechDip, ExpDip, ConstantDatum, ProfileDatum, TableDatum>;

[[nodiscard]] std::string_view datum_kind(const InitialDatum& d) noexcept;

/// Nodal values, clipped into [0, inf).
[[nodiscard]] std::vector<double> initial_values(const InitialDatum& d, const Grid1D& g);
[[nodiscard]] PdeState initial_state(const InitialDatum& d, const Grid1D& g);

inline constexpr double kDtFactor = 0.4;

/// One forward Euler / central difference step with mirror ends. The
/// reaction acts at nodes that are positive before or after diffusion.
/// Negative values are set to zero and their mass booked. Requires
/// dt <= 0.4 dx^2.
void step(PdeState& s, double alpha, double dt);

struct RunOptions {
  double dt_factor = kDtFactor;
  /// Levels tracked after the run (see front_track).
  std::vector<double> track_levels;
};

struct FrontTrack {
  double level = 0.0;
  std::vector<double> times;
  std::vector<double> positions;
  double fitted_speed = 0.0;
  /// Fit interval [t0, t1].
  double window_start = 0.0;
  double window_end = 0.0;
  /// False when the crossing was lost before the last snapshot.
  bool complete = true;
};

struct RunResult {
  double alpha = 0.5;
  double dt = 0.0;
  PdeState initial;
  std::vector<double> probe_times;
  /// One per probe time.
  std::vector<PdeState> snapshots;
  std::vector<std::vector<Interval>> supports;
  std::vector<double> clamped_mass;
  std::optional<double> extinction_time;
  std::vector<FrontTrack> tracks;
  /// Smallest nodal value over all exposed states.
  double min_value = 0.0;
};

/// Steps to time T (relative to s.time), hitting every probe time exactly.
/// Probe times are measured from the start of the run.
[[nodiscard]] RunResult run(const PdeState& s, double alpha, double T, const std::vector<double>& probes,
                            const RunOptions& o = {});

/// Per snapshot, the level crossing nearest the previous one (the rightmost
/// crossing, or the one nearest `start_hint`, at the first snapshot). The fit
/// is a least-squares slope over the trailing half of the track.
[[nodiscard]] FrontTrack front_track(const RunResult& r, double level, std::optional<double> start_hint = std::nullopt);

/// Maximal runs of nodes with u > threshold, endpoints interpolated.
[[nodiscard]] std::vector<Interval> support_intervals(const PdeState& s, double threshold = 0.0);

/// First probe time at which the state is identically zero.
[[nodiscard]] std::optional<double> extinction_time(const RunResult& r);

/// gamma' = (gamma - alpha)(1 - gamma), gamma(0) = gamma0, held at 0 once it
/// gets there.
[[nodiscard]] double bistable_ode_solution(double alpha, double gamma0, double t);
/// Time at which the spatially uniform solution reaches 0 (only gamma0 < alpha).
[[nodiscard]] std::optional<double> uniform_extinction_time(double alpha, double gamma0);

struct ComparisonReport {
  double max_violation = 0.0;
  double tolerance = 0.0;
  double worst_time = 0.0;
  double worst_x = 0.0;
  bool pass = false;
};

/// max over probe times and nodes of (A - B)^+, pass iff <= 1e-8 + 10 dx^2.
[[nodiscard]] ComparisonReport comparison_check(const RunResult& a, const RunResult& b);

/// Half-width beyond the initial front or support that keeps mirror ends out
/// of reach: (|speed| + 2) T + 40.
[[nodiscard]] double domain_margin(double speed, double T);

}  // namespace fbrd
