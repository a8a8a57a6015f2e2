#include "fbrd/model.hpp"

#include <cmath>
#include <string>

#include "fbrd/error.hpp"

namespace fbrd {

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw PreconditionError("alpha = " + std::to_string(alpha) + " outside the admissible interval (0,1)");
  }
}

bool is_one_third(double alpha) noexcept { return std::abs(alpha - 1.0 / 3.0) <= kOneThirdTol; }

ModelParams::ModelParams(double alpha, double c) : alpha_(alpha), c_(c) {
  require_alpha(alpha);
  if (!std::isfinite(c)) {
    throw PreconditionError("wave speed must be finite");
  }
}

double reaction(double u, double alpha) noexcept { return u > 0.0 ? reaction_smooth(u, alpha) : 0.0; }

Derivative vector_field(const PhaseState& s, const ModelParams& p, bool smooth) noexcept {
  const double f = smooth ? reaction_smooth(s.u, p.alpha()) : reaction(s.u, p.alpha());
  return {s.w, -p.c() * s.w - f};
}

double potential(double u, double alpha) noexcept {
  // with d = 1 - u the integrand becomes ((1 - alpha) - t) t on [0, d]
  const double d = 1.0 - u;
  return d * d * ((1.0 - alpha) / 2.0 - d / 3.0);
}

double energy(double u, double w, double alpha) noexcept { return 0.5 * w * w - potential(u, alpha); }

bool in_omega(double u, double w, double alpha) noexcept { return u < 1.0 && energy(u, w, alpha) < 0.0; }

std::string_view to_string(AlphaPointType t) noexcept {
  switch (t) {
    case AlphaPointType::stable_node: return "stable_node";
    case AlphaPointType::stable_focus: return "stable_focus";
    case AlphaPointType::center: return "center";
    case AlphaPointType::unstable_focus: return "unstable_focus";
    case AlphaPointType::unstable_node: return "unstable_node";
  }
  return "unknown";
}

EigenData eigen(const ModelParams& p) {
  const double c = p.c();
  const double k = 1.0 - p.alpha();
  EigenData e;

  const double disc = c * c - 4.0 * k;
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    e.lambda_plus = {(-c + r) / 2.0, 0.0};
    e.lambda_minus = {(-c - r) / 2.0, 0.0};
    e.lambda_real = true;
  } else {
    const double im = std::sqrt(-disc) / 2.0;
    e.lambda_plus = {-c / 2.0, im};
    e.lambda_minus = {-c / 2.0, -im};
    e.lambda_real = false;
  }

  const double r1 = std::sqrt(c * c + 4.0 * k);
  e.Lambda_plus = (-c + r1) / 2.0;
  e.Lambda_minus = (-c - r1) / 2.0;
  e.vec_unstable = {1.0, e.Lambda_plus};
  e.vec_stable = {1.0, e.Lambda_minus};

  if (c > 0.0) {
    e.alpha_point = e.lambda_real ? AlphaPointType::stable_node : AlphaPointType::stable_focus;
  } else if (c < 0.0) {
    e.alpha_point = e.lambda_real ? AlphaPointType::unstable_node : AlphaPointType::unstable_focus;
  } else {
    e.alpha_point = AlphaPointType::center;
  }
  return e;
}

PhaseState manifold_seed(const ModelParams& p, ManifoldBranch branch, double offset) {
  if (!(offset > 0.0 && offset < 0.01)) {
    throw PreconditionError("manifold offset must lie in (0, 0.01), got " + std::to_string(offset));
  }
  const EigenData e = eigen(p);
  const Derivative v = branch == ManifoldBranch::unstable_below ? e.vec_unstable : e.vec_stable;
  const double norm = std::hypot(v.du, v.dw);
  const double s = -offset;
  return {0.0, 1.0 + s * v.du / norm, s * v.dw / norm};
}

}  // namespace fbrd
