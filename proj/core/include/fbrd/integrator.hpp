#pragma once

// Adaptive Dormand-Prince 5(4) integration of the phase-plane system with
// event detection, plus a fixed-step sampler for uniform output grids.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "fbrd/error.hpp"
#include "fbrd/model.hpp"

namespace fbrd {

enum class Direction { forward, backward };
enum class Crossing { any, rising, falling };

struct ULevel {
  double level = 0.0;
};
struct WLevel {
  double level = 0.0;
};
/// Fires when the Euclidean distance to (u, w) drops below `radius`.
struct NearPoint {
  double u = 0.0;
  double w = 0.0;
  double radius = 1e-8;
};
/// Fires when the state leaves the closed box.
struct LeavesBox {
  double u_min = -50.0;
  double u_max = 50.0;
  double w_min = -50.0;
  double w_max = 50.0;
};
/// Fires when xi passes the given value in the direction of integration.
struct XiBound {
  double xi = 0.0;
};

struct EventSpec {
  std::variant<ULevel, WLevel, NearPoint, LeavesBox, XiBound> condition;
  /// Only honoured by the level-crossing kinds.
  Crossing direction = Crossing::any;

  static EventSpec u_crosses(double level, Crossing dir = Crossing::any);
  static EventSpec w_crosses(double level, Crossing dir = Crossing::any);
  static EventSpec near(double u, double w, double radius);
  static EventSpec leaves_box(const LeavesBox& box);
  static EventSpec xi_exceeds(double xi);
};

struct IntegratorOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double initial_step = 1e-4;
  double max_step = 0.1;
  /// Relative step floor; a smaller accepted step is reported as underflow.
  double min_step = 1e-14;
  double max_span = 1e4;
  std::size_t max_steps = 20'000'000;
  /// Interpolate extra samples so that linear interpolation between samples
  /// stays within abs_tol. Shooting loops switch this off.
  bool dense = true;
  bool smooth = true;
  double event_xi_tol = 1e-12;
  /// |g| below this at a sample is a candidate touch (no sign change).
  double touch_tol = 1e-12;
};

enum class Termination { event, max_span, max_steps };
enum class Equilibrium { alpha_point, one_point };

[[nodiscard]] std::string_view to_string(Termination t) noexcept;

struct Trajectory {
  ModelParams params;
  Direction direction = Direction::forward;
  std::vector<PhaseState> samples;
  Termination termination = Termination::max_span;
  /// Index into the event list of the event that stopped the run.
  std::optional<std::size_t> fired_event;
  /// Set when the fired event is a NearPoint centred on an equilibrium.
  std::optional<Equilibrium> converged_to;
  /// Grazing contacts of level events (no sign change).
  std::vector<PhaseState> touches;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;

  [[nodiscard]] const PhaseState& front() const { return samples.front(); }
  [[nodiscard]] const PhaseState& back() const { return samples.back(); }
  [[nodiscard]] bool fired(std::size_t event) const { return fired_event && *fired_event == event; }
};

/// Raised on step-size underflow; carries the last accepted state.
class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, PhaseState last) : NumericalError(what), last_(last) {}
  [[nodiscard]] const PhaseState& last_state() const noexcept { return last_; }

 private:
  PhaseState last_;
};

[[nodiscard]] Trajectory integrate(const PhaseState& seed, const ModelParams& params, Direction direction,
                                   std::span<const EventSpec> events, const IntegratorOptions& options = {});

/// Evaluates an event condition; crossings are sign changes of this value.
[[nodiscard]] double event_function(const EventSpec& e, const PhaseState& s, Direction direction) noexcept;

struct GridSamplerOptions {
  double max_substep = 5e-3;
  bool smooth = true;
};

/// Integrates with fixed Dormand-Prince substeps and returns the states at
/// xi = first_xi + k * step (step may be negative), k = 0, 1, ...
/// Stops after the first emitted state for which `stop` returns true, or
/// after `max_count` states. first_xi must not lie behind start.xi.
[[nodiscard]] std::vector<PhaseState> sample_on_grid(const PhaseState& start, const ModelParams& params,
                                                     double first_xi, double step, std::size_t max_count,
                                                     const std::function<bool(const PhaseState&)>& stop,
                                                     const GridSamplerOptions& options = {});

}  // namespace fbrd
