#pragma once

// Sampled traveling-wave and stationary profiles. Smooth pieces come from
// the phase-plane orbits; the zero state is glued in at free boundaries.

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "fbrd/error.hpp"
#include "fbrd/integrator.hpp"
#include "fbrd/shooting.hpp"

namespace fbrd {

enum class ProfileKind {
  monostable_kpp,
  bistable,
  plateau,
  pushed,
  stationary_bump,
  stationary_dip,
  stationary_glued,
  stationary_periodic,
};

/// Asymptotic value at an end. `none` covers both an exact zero tail and
/// ends without a limit (periodic).
enum class Limit { zero, alpha, one, none };

[[nodiscard]] std::string_view to_string(ProfileKind k) noexcept;
[[nodiscard]] std::string_view to_string(Limit l) noexcept;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct WaveProfile {
  ProfileKind kind = ProfileKind::bistable;
  double alpha = 0.5;
  double speed = 0.0;
  double grid_step = 1e-3;
  /// Uniform, strictly increasing.
  std::vector<double> xi;
  std::vector<double> u;
  std::vector<double> free_boundaries;
  /// Closed intervals (clipped to the sampled range) on which u == 0 exactly.
  std::vector<Interval> zero_intervals;
  std::pair<Limit, Limit> limits{Limit::none, Limit::none};
  double plateau_length = 0.0;
  /// Starting turning point of a periodic profile.
  double periodic_u0 = 0.0;
  /// Classification of traveling waves; empty for stationary profiles.
  std::optional<WaveShape> shape;

  [[nodiscard]] std::size_t size() const noexcept { return xi.size(); }
  [[nodiscard]] double min_u() const;
  [[nodiscard]] double max_u() const;

  friend bool operator==(const WaveProfile&, const WaveProfile&) = default;
};

/// Raised when the requested wave does not exist; carries the classification.
class NoWaveError : public PreconditionError {
 public:
  NoWaveError(const std::string& what, WaveClass cls) : PreconditionError(what), cls_(cls) {}
  [[nodiscard]] const WaveClass& classification() const noexcept { return cls_; }

 private:
  WaveClass cls_;
};

struct ProfileOptions {
  double step = 1e-3;
  double speed_tol = kDefaultSpeedTol;
  /// Length of the exact-zero stretch appended beyond a free boundary.
  double zero_padding = 10.0;
  /// Smooth tails are followed until within this distance of their equilibrium.
  double tail_tol = 1e-6;
  double max_span = 5e3;
  ShootingOptions shooting;
  GridSamplerOptions sampler;
};

[[nodiscard]] WaveProfile bistable_profile(double alpha, const ProfileOptions& o = {});
[[nodiscard]] WaveProfile plateau_profile(double alpha, double L, const ProfileOptions& o = {});
[[nodiscard]] WaveProfile monostable_profile(double alpha, double c, const ProfileOptions& o = {});
[[nodiscard]] WaveProfile pushed_profile(double alpha, double c, const ProfileOptions& o = {});

/// Bistable profile with an already known speed (skips the shooting step).
[[nodiscard]] WaveProfile bistable_profile(double alpha, const SpeedEstimate& c_bistable, const ProfileOptions& o = {});

enum class StationaryKind { bump, dip, glued, periodic };
[[nodiscard]] std::string_view to_string(StationaryKind k) noexcept;

struct StationarySpec {
  StationaryKind kind = StationaryKind::bump;
  /// Zero-interval length for `glued`.
  double L = 0.0;
  /// Turning point for `periodic`.
  double u0 = 0.0;
};

[[nodiscard]] WaveProfile stationary_profile(double alpha, const StationarySpec& spec, const ProfileOptions& o = {});

/// Maximum of the stationary bump: the root in (alpha, 1) of E(u, 0) = E(0, 0).
[[nodiscard]] double bump_max(double alpha);

/// Conjugate turning point u1 in (alpha, 1) with F(u1) = F(u0).
[[nodiscard]] double conjugate_turning_point(double alpha, double u0);

/// Period 2T of the closed c = 0 orbit through (u0, 0), by quadrature.
[[nodiscard]] double orbit_period(double alpha, double u0);

/// Same period measured as the xi-span of one integrated loop.
[[nodiscard]] double orbit_period_loop(double alpha, double u0, const IntegratorOptions& o = {});

/// xi -> -xi with the speed negated and the limits swapped.
[[nodiscard]] WaveProfile reflect(const WaveProfile& p);

/// Linear interpolation; constant extension by the end samples. Points within
/// 1e-9 steps of a sample return that sample exactly.
[[nodiscard]] double interpolate(const WaveProfile& p, double xi);

/// max |u'' + c u' + f(u)| by central differences, skipping samples within one
/// grid step of a free boundary. Needs a uniform grid with at least 8 samples.
[[nodiscard]] double residual(const WaveProfile& p);
[[nodiscard]] double residual(const WaveProfile& p, const ModelParams& params);

}  // namespace fbrd
