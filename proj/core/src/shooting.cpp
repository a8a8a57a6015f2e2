#include "fbrd/shooting.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "fbrd/error.hpp"

namespace fbrd {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

// Bisection on a sign function: neg(lo) is true, neg(hi) is false.
template <class Eval>
SpeedEstimate bisect(double lo, double hi, double at_lo, double at_hi, double tol, Eval eval) {
  SpeedEstimate s;
  s.method = SpeedMethod::bisection;
  s.lo = lo;
  s.hi = hi;
  s.at_lo = at_lo;
  s.at_hi = at_hi;
  while (s.hi - s.lo > tol) {
    const double mid = 0.5 * (s.lo + s.hi);
    if (mid <= s.lo || mid >= s.hi) break;
    const double v = eval(mid);
    ++s.evaluations;
    if (v < 0.0) {
      s.lo = mid;
      s.at_lo = v;
    } else {
      s.hi = mid;
      s.at_hi = v;
    }
  }
  s.value = 0.5 * (s.lo + s.hi);
  return s;
}

SpeedEstimate negate(const SpeedEstimate& s) {
  SpeedEstimate n = s;
  n.value = -s.value;
  n.lo = -s.hi;
  n.hi = -s.lo;
  n.at_lo = s.at_hi;
  n.at_hi = s.at_lo;
  return n;
}

}  // namespace

std::string_view to_string(SpeedMethod m) noexcept {
  return m == SpeedMethod::closed_form ? "closed-form" : "bisection";
}

std::string_view to_string(BoundaryCondition bc) noexcept {
  switch (bc) {
    case BoundaryCondition::one_to_alpha: return "one-to-alpha";
    case BoundaryCondition::one_to_zero: return "one-to-zero";
    case BoundaryCondition::zero_to_alpha: return "zero-to-alpha";
  }
  return "unknown";
}

std::string_view to_string(WaveShape s) noexcept {
  switch (s) {
    case WaveShape::monotone: return "monotone";
    case WaveShape::oscillatory: return "oscillatory";
    case WaveShape::touches_zero_nonunique: return "touches-zero-nonunique";
    case WaveShape::single_maximum: return "single-maximum";
    case WaveShape::none: return "none";
  }
  return "unknown";
}

double kpp_min_speed(double alpha) {
  require_alpha(alpha);
  return 2.0 * std::sqrt(1.0 - alpha);
}

EndpointResult endpoint(double alpha, double c, Branch branch, const ShootingOptions& options) {
  require_alpha(alpha);
  if (!(c >= 0.0)) throw PreconditionError("endpoint shooting needs c >= 0, got " + fmt(c));
  const ModelParams p(alpha, c);

  EndpointResult r;
  r.branch = branch;
  if (branch == Branch::minus) {
    const EventSpec events[] = {
        EventSpec::w_crosses(0.0, Crossing::rising),
        EventSpec::near(alpha, 0.0, options.convergence_radius),
        EventSpec::leaves_box(options.box),
    };
    const auto seed = manifold_seed(p, ManifoldBranch::unstable_below, options.offset);
    const auto t = integrate(seed, p, Direction::forward, events, options.integrator);
    if (t.fired(0)) {
      r.status = EndpointStatus::crossing;
    } else if (t.fired(1)) {
      r.status = EndpointStatus::no_crossing;
    } else {
      throw NumericalError("minus-branch trajectory at alpha=" + fmt(alpha) + ", c=" + fmt(c) +
                           " neither crossed w=0 nor converged (termination: " +
                           std::string(to_string(t.termination)) + ")");
    }
    r.value = t.back().u;
    r.xi_at_crossing = t.back().xi;
    return r;
  }

  const EventSpec events[] = {
      EventSpec::w_crosses(0.0, Crossing::any),
      EventSpec::leaves_box(options.box),
  };
  const auto seed = manifold_seed(p, ManifoldBranch::stable_above, options.offset);
  const auto t = integrate(seed, p, Direction::backward, events, options.integrator);
  if (t.fired(0)) {
    r.status = EndpointStatus::crossing;
  } else if (t.fired(1)) {
    r.status = EndpointStatus::diverged;
  } else {
    throw NumericalError("plus-branch trajectory at alpha=" + fmt(alpha) + ", c=" + fmt(c) +
                         " did not cross w=0 within the integration limits");
  }
  r.value = t.back().u;
  r.xi_at_crossing = t.back().xi;
  return r;
}

SpeedEstimate bistable_speed(double alpha, double tol, const ShootingOptions& options) {
  require_alpha(alpha);
  if (!(tol > 0.0)) throw PreconditionError("speed tolerance must be positive");
  if (is_one_third(alpha)) return SpeedEstimate::exact(0.0);

  if (alpha < 1.0 / 3.0) {
    // u_c^- increases strictly from (3a-1)/2 < 0 towards alpha on [0, c_kpp);
    // convergence without crossing counts as the limit value alpha.
    auto g = [&](double c) {
      const auto e = endpoint(alpha, c, Branch::minus, options);
      return e.has_crossing() ? e.value : alpha;
    };
    const double hi = kpp_min_speed(alpha);
    const double g0 = g(0.0);
    const double g1 = g(hi);
    if (!(g0 < 0.0 && g1 > 0.0)) {
      throw NumericalError("bistable speed bracket [0, " + fmt(hi) + "] not established: u_c^- = " + fmt(g0) +
                           " at c=0 and " + fmt(g1) + " at c=c_kpp");
    }
    auto s = bisect(0.0, hi, g0, g1, tol, g);
    s.evaluations += 2;
    return s;
  }

  // u_c^+ decreases strictly from (3a-1)/2 > 0 without bound; a diverged orbit
  // is far below zero.
  auto g = [&](double c) {
    const auto e = endpoint(alpha, c, Branch::plus, options);
    return e.value;
  };
  double lo = 0.0;
  double g_lo = g(0.0);
  int evals = 1;
  if (!(g_lo > 0.0)) {
    throw NumericalError("u_0^+ = " + fmt(g_lo) + " is not positive for alpha=" + fmt(alpha));
  }
  double hi = 0.1;
  double g_hi = g(hi);
  ++evals;
  while (g_hi > 0.0) {
    lo = hi;
    g_lo = g_hi;
    hi *= 2.0;
    if (hi > 1e3) {
      throw NumericalError("no sign change of u_c^+ on c in [0, " + fmt(hi) + "] for alpha=" + fmt(alpha) +
                           "; last value " + fmt(g_hi));
    }
    g_hi = g(hi);
    ++evals;
  }
  // g is decreasing: flip it so that bisect sees negative at the low end
  auto flipped = bisect(lo, hi, -g_lo, -g_hi, tol, [&](double c) { return -g(c); });
  flipped.at_lo = -flipped.at_lo;
  flipped.at_hi = -flipped.at_hi;
  flipped.evaluations += evals;
  return negate(flipped);
}

SpeedEstimate pushed_min_speed(double alpha, double tol, const ShootingOptions& options) {
  require_alpha(alpha);
  if (alpha <= 1.0 / 3.0 || is_one_third(alpha)) return SpeedEstimate::exact(0.0);
  return negate(bistable_speed(alpha, tol, options));
}

MonotoneIndicator pushed_orbit_indicator(double alpha, double c, const ShootingOptions& options) {
  const ModelParams p(alpha, c);
  const EventSpec events[] = {
      EventSpec::near(alpha, 0.0, options.convergence_radius),
      EventSpec::w_crosses(-options.monotone_w_tol, Crossing::falling),
      EventSpec::leaves_box(options.box),
  };
  auto opts = options.integrator;
  opts.smooth = true;
  const auto t = integrate(PhaseState{0.0, 0.0, 0.0}, p, Direction::forward, events, opts);
  MonotoneIndicator m;
  m.converged = t.fired(0);
  m.min_w = 0.0;
  m.max_u = 0.0;
  for (const auto& s : t.samples) {
    m.min_w = std::min(m.min_w, s.w);
    m.max_u = std::max(m.max_u, s.u);
  }
  m.monotone = m.converged && m.min_w >= -options.monotone_w_tol;
  return m;
}

SpeedEstimate monotone_min_speed(double alpha, const SpeedEstimate& pushed_min, double tol,
                                 const ShootingOptions& options) {
  require_alpha(alpha);
  if (!(tol > 0.0)) throw PreconditionError("speed tolerance must be positive");
  const double lo = std::max(pushed_min.value, kpp_min_speed(alpha));
  const double hi = 2.0;
  // indicator as a sign: negative = not monotone
  auto g = [&](double c) { return pushed_orbit_indicator(alpha, c, options).monotone ? 1.0 : -1.0; };

  const double g_hi = g(hi);
  if (g_hi < 0.0) {
    throw NumericalError("orbit through the origin is not monotone at c = 2 for alpha=" + fmt(alpha));
  }
  if (lo >= hi) {
    SpeedEstimate s = SpeedEstimate::exact(hi);
    s.method = SpeedMethod::bisection;
    s.degenerate = true;
    return s;
  }
  const double g_lo = g(lo);
  if (g_lo > 0.0) {
    SpeedEstimate s;
    s.method = SpeedMethod::bisection;
    s.value = s.lo = s.hi = lo;
    s.at_lo = s.at_hi = g_lo;
    s.degenerate = true;
    s.evaluations = 2;
    return s;
  }
  auto s = bisect(lo, hi, g_lo, g_hi, tol, g);
  s.evaluations += 2;
  return s;
}

SpeedEstimate monotone_min_speed(double alpha, double tol, const ShootingOptions& options) {
  return monotone_min_speed(alpha, pushed_min_speed(alpha, tol, options), tol, options);
}

CriticalSpeeds critical_speeds(double alpha, double tol, const ShootingOptions& options) {
  CriticalSpeeds cs;
  cs.alpha = alpha;
  cs.tol = tol;
  cs.c_kpp = SpeedEstimate::exact(kpp_min_speed(alpha));
  cs.c_bistable = bistable_speed(alpha, tol, options);
  cs.c_pushed_min = alpha <= 1.0 / 3.0 || is_one_third(alpha) ? SpeedEstimate::exact(0.0) : negate(cs.c_bistable);
  cs.c_monotone_min = monotone_min_speed(alpha, cs.c_pushed_min, tol, options);
  return cs;
}

namespace {

bool within(double c, const SpeedEstimate& s) {
  const double slack = std::max(s.width(), 4.0 * std::numeric_limits<double>::epsilon());
  return std::abs(c - s.value) <= slack;
}

// Lazily computed speed set for the classification table.
class SpeedSource {
 public:
  SpeedSource(double alpha, double tol, const ShootingOptions& o, const CriticalSpeeds* known)
      : alpha_(alpha), tol_(tol), o_(o), known_(known) {}

  double kpp() const { return kpp_min_speed(alpha_); }
  const SpeedEstimate& bistable() {
    if (known_) return known_->c_bistable;
    if (!bistable_) bistable_ = bistable_speed(alpha_, tol_, o_);
    return *bistable_;
  }
  const SpeedEstimate& pushed() {
    if (known_) return known_->c_pushed_min;
    if (!pushed_) {
      pushed_ = alpha_ <= 1.0 / 3.0 || is_one_third(alpha_) ? SpeedEstimate::exact(0.0) : negate(bistable());
    }
    return *pushed_;
  }
  const SpeedEstimate& monotone() {
    if (known_) return known_->c_monotone_min;
    if (!monotone_) monotone_ = monotone_min_speed(alpha_, pushed(), tol_, o_);
    return *monotone_;
  }

 private:
  double alpha_;
  double tol_;
  ShootingOptions o_;
  const CriticalSpeeds* known_;
  std::optional<SpeedEstimate> bistable_;
  std::optional<SpeedEstimate> pushed_;
  std::optional<SpeedEstimate> monotone_;
};

WaveClass decide(double alpha, double c, BoundaryCondition bc, SpeedSource& src) {
  require_alpha(alpha);
  if (!std::isfinite(c)) throw PreconditionError("wave speed must be finite");
  const WaveClass none{false, WaveShape::none, false};
  const bool low_threshold = alpha < 1.0 / 3.0 && !is_one_third(alpha);

  switch (bc) {
    case BoundaryCondition::one_to_alpha: {
      if (low_threshold) {
        const auto& cb = src.bistable();
        if (within(c, cb)) return {true, WaveShape::touches_zero_nonunique, true};
        if (c < cb.value) return none;
      } else if (c <= 0.0) {
        return none;
      }
      return c < src.kpp() ? WaveClass{true, WaveShape::oscillatory, false}
                           : WaveClass{true, WaveShape::monotone, false};
    }
    case BoundaryCondition::one_to_zero: {
      const auto& cb = src.bistable();
      return within(c, cb) ? WaveClass{true, WaveShape::monotone, true} : none;
    }
    case BoundaryCondition::zero_to_alpha: {
      if (c <= src.pushed().value) return none;
      if (c < src.kpp()) return {true, WaveShape::oscillatory, true};
      if (c < src.monotone().value) return {true, WaveShape::single_maximum, true};
      return {true, WaveShape::monotone, true};
    }
  }
  return none;
}

}  // namespace

WaveClass classify(double alpha, double c, BoundaryCondition bc, const CriticalSpeeds& speeds) {
  SpeedSource src(alpha, speeds.tol, ShootingOptions{}, &speeds);
  return decide(alpha, c, bc, src);
}

WaveClass classify(double alpha, double c, BoundaryCondition bc, double tol, const ShootingOptions& options) {
  SpeedSource src(alpha, tol, options, nullptr);
  return decide(alpha, c, bc, src);
}

}  // namespace fbrd
