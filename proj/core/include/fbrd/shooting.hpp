#pragma once

// Critical wave speeds and the existence/shape classification of traveling
// waves, computed by shooting along the manifolds of the saddle (1, 0).
//
//   c_kpp          = 2 sqrt(1 - alpha)             minimal monotone 1 -> alpha speed
//   c_bistable     unique 1 -> 0 speed (sign changes at alpha = 1/3)
//   c_pushed_min   existence threshold of 0 -> alpha waves, max(0, -c_bistable)
//   c_monotone_min monotonicity threshold of 0 -> alpha waves, in [max(c_pushed_min, c_kpp), 2]

#include <string_view>
#include <utility>
#include <vector>

#include "fbrd/integrator.hpp"
#include "fbrd/model.hpp"

namespace fbrd {

enum class Branch {
  minus,  // unstable manifold, leaves (1,0) below the u-axis
  plus,   // stable manifold, traced backward from (1,0) above the u-axis
};

enum class EndpointStatus {
  crossing,     // first w = 0 crossing found
  no_crossing,  // minus branch converged to (alpha, 0) first
  diverged,     // plus branch left the box before crossing w = 0
};

struct EndpointResult {
  Branch branch = Branch::minus;
  EndpointStatus status = EndpointStatus::crossing;
  /// u at the first w = 0 crossing; for `diverged` the last u inside the box.
  double value = 0.0;
  double xi_at_crossing = 0.0;

  [[nodiscard]] bool has_crossing() const noexcept { return status == EndpointStatus::crossing; }
};

struct ShootingOptions {
  double offset = kDefaultManifoldOffset;
  LeavesBox box{-50.0, 50.0, -50.0, 50.0};
  double convergence_radius = 1e-8;
  /// Indicator threshold: an orbit counts as monotone while w >= -monotone_w_tol.
  double monotone_w_tol = 1e-10;
  IntegratorOptions integrator = [] {
    IntegratorOptions o;
    o.dense = false;
    return o;
  }();
};

[[nodiscard]] EndpointResult endpoint(double alpha, double c, Branch branch, const ShootingOptions& options = {});

enum class SpeedMethod { closed_form, bisection };
[[nodiscard]] std::string_view to_string(SpeedMethod m) noexcept;

/// A speed with its bracketing certificate. For bisection results the
/// quantities evaluated at `lo` and `hi` have opposite sign/classification.
struct SpeedEstimate {
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  SpeedMethod method = SpeedMethod::closed_form;
  double at_lo = 0.0;
  double at_hi = 0.0;
  /// Both ends of the monotone-speed bracket were already monotone.
  bool degenerate = false;
  int evaluations = 0;

  [[nodiscard]] double width() const noexcept { return hi - lo; }
  static SpeedEstimate exact(double v) { return {v, v, v, SpeedMethod::closed_form, 0.0, 0.0, false, 0}; }
};

inline constexpr double kDefaultSpeedTol = 1e-8;

[[nodiscard]] double kpp_min_speed(double alpha);

[[nodiscard]] SpeedEstimate bistable_speed(double alpha, double tol = kDefaultSpeedTol,
                                           const ShootingOptions& options = {});

[[nodiscard]] SpeedEstimate pushed_min_speed(double alpha, double tol = kDefaultSpeedTol,
                                             const ShootingOptions& options = {});

/// Result of following the orbit through (0,0) of the smooth system.
struct MonotoneIndicator {
  bool monotone = false;
  bool converged = false;
  double min_w = 0.0;
  double max_u = 0.0;
};

[[nodiscard]] MonotoneIndicator pushed_orbit_indicator(double alpha, double c, const ShootingOptions& options = {});

[[nodiscard]] SpeedEstimate monotone_min_speed(double alpha, double tol = kDefaultSpeedTol,
                                               const ShootingOptions& options = {});
/// Same, reusing an already computed existence threshold.
[[nodiscard]] SpeedEstimate monotone_min_speed(double alpha, const SpeedEstimate& pushed_min, double tol,
                                               const ShootingOptions& options = {});

struct CriticalSpeeds {
  double alpha = 0.0;
  double tol = kDefaultSpeedTol;
  SpeedEstimate c_kpp;
  SpeedEstimate c_bistable;
  SpeedEstimate c_pushed_min;
  SpeedEstimate c_monotone_min;
};

[[nodiscard]] CriticalSpeeds critical_speeds(double alpha, double tol = kDefaultSpeedTol,
                                             const ShootingOptions& options = {});

enum class BoundaryCondition {
  one_to_alpha,   // u(-inf) = 1, u(+inf) = alpha
  one_to_zero,    // u(-inf) = 1, u = 0 exactly on xi >= 0
  zero_to_alpha,  // u = 0 on xi <= 0, u(+inf) = alpha
};

enum class WaveShape { monotone, oscillatory, touches_zero_nonunique, single_maximum, none };

[[nodiscard]] std::string_view to_string(BoundaryCondition bc) noexcept;
[[nodiscard]] std::string_view to_string(WaveShape s) noexcept;

struct WaveClass {
  bool exists = false;
  WaveShape shape = WaveShape::none;
  /// The wave attains 0 and carries a free boundary.
  bool free_boundary = false;

  friend bool operator==(const WaveClass&, const WaveClass&) = default;
};

/// Decision table over (alpha, c, boundary condition). Speed equalities are
/// decided within the bracket width of the supplied estimates.
[[nodiscard]] WaveClass classify(double alpha, double c, BoundaryCondition bc, const CriticalSpeeds& speeds);

/// Computes only the speeds the decision needs.
[[nodiscard]] WaveClass classify(double alpha, double c, BoundaryCondition bc, double tol = kDefaultSpeedTol,
                                 const ShootingOptions& options = {});

}  // namespace fbrd
