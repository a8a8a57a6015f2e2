#pragma once

// Reaction term, traveling-wave phase plane, energy and equilibrium data for
//   u_t = u_xx + (u - alpha)(1 - u) chi{u > 0}.
// In the moving frame xi = x - c t a profile satisfies u'' + c u' + f(u) = 0,
// written as the first-order system u' = w, w' = -c w - f(u).

#include <complex>
#include <string_view>

namespace fbrd {

/// Threshold alpha in (0,1) and wave speed c (any finite value).
class ModelParams {
 public:
  ModelParams(double alpha, double c);

  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double c() const noexcept { return c_; }

  [[nodiscard]] ModelParams with_speed(double c) const { return {alpha_, c}; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double alpha_;
  double c_;
};

/// Throws PreconditionError unless 0 < alpha < 1.
void require_alpha(double alpha);

/// Tolerance used wherever "alpha = 1/3" is decided in floating point.
inline constexpr double kOneThirdTol = 1e-12;
[[nodiscard]] bool is_one_third(double alpha) noexcept;

/// Homoclinic level (3 alpha - 1)/2: E((3a-1)/2, 0) = 0.
[[nodiscard]] constexpr double homoclinic_turning_point(double alpha) noexcept {
  return 0.5 * (3.0 * alpha - 1.0);
}

struct PhaseState {
  double xi = 0.0;
  double u = 0.0;
  double w = 0.0;

  friend bool operator==(const PhaseState&, const PhaseState&) = default;
};

struct Derivative {
  double du = 0.0;
  double dw = 0.0;
};

/// (u - alpha)(1 - u) for u > 0 and exactly 0 for u <= 0.
[[nodiscard]] double reaction(double u, double alpha) noexcept;

/// The polynomial part (u - alpha)(1 - u), no cut-off.
[[nodiscard]] constexpr double reaction_smooth(double u, double alpha) noexcept {
  return (u - alpha) * (1.0 - u);
}

/// Right-hand side of the phase-plane system. With `smooth` the cut-off
/// chi{u>0} is dropped.
[[nodiscard]] Derivative vector_field(const PhaseState& s, const ModelParams& p,
                                      bool smooth) noexcept;

/// F(u) = int_u^1 (s - alpha)(1 - s) ds, closed form.
[[nodiscard]] double potential(double u, double alpha) noexcept;

/// E(u, w) = w^2/2 - F(u). Conserved for c = 0, dE/dxi = -c w^2 otherwise.
[[nodiscard]] double energy(double u, double w, double alpha) noexcept;

/// Omega = {E < 0, u < 1}.
[[nodiscard]] bool in_omega(double u, double w, double alpha) noexcept;

enum class AlphaPointType { stable_node, stable_focus, center, unstable_focus, unstable_node };
enum class OnePointType { saddle };

[[nodiscard]] std::string_view to_string(AlphaPointType t) noexcept;

/// Linearisation at both equilibria.
struct EigenData {
  /// Eigenvalues at (alpha, 0); a conjugate pair when c^2 < 4(1 - alpha).
  std::complex<double> lambda_plus;
  std::complex<double> lambda_minus;
  bool lambda_real = true;
  /// Real eigenvalues at the saddle (1, 0), Lambda_minus < 0 < Lambda_plus.
  double Lambda_plus = 0.0;
  double Lambda_minus = 0.0;
  /// Eigenvector directions (1, Lambda_plus) and (1, Lambda_minus), unnormalised.
  Derivative vec_unstable;
  Derivative vec_stable;
  AlphaPointType alpha_point = AlphaPointType::center;
  OnePointType one_point = OnePointType::saddle;
};

[[nodiscard]] EigenData eigen(const ModelParams& p);

enum class ManifoldBranch {
  unstable_below,  // leaves (1,0) into u < 1, w < 0 as xi increases
  stable_above,    // enters (1,0) from u < 1, w > 0 as xi increases
};

inline constexpr double kDefaultManifoldOffset = 1e-7;

/// Point on the local (un)stable manifold of the saddle (1, 0), displaced by
/// `offset` along the normalised eigenvector. Offset must lie in (0, 0.01).
[[nodiscard]] PhaseState manifold_seed(const ModelParams& p, ManifoldBranch branch,
                                       double offset = kDefaultManifoldOffset);

}  // namespace fbrd
