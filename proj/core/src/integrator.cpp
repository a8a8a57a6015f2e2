#include "fbrd/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dopri5.hpp"

namespace fbrd {

namespace {

using detail::dp5_step;

bool is_level(const EventSpec& e) noexcept {
  return std::holds_alternative<ULevel>(e.condition) || std::holds_alternative<WLevel>(e.condition);
}

int sign_of(double g, double tol) noexcept { return g > tol ? 1 : (g < -tol ? -1 : 0); }

bool direction_matches(Crossing dir, int from_sign) noexcept {
  switch (dir) {
    case Crossing::any: return true;
    case Crossing::rising: return from_sign < 0;
    case Crossing::falling: return from_sign > 0;
  }
  return false;
}

void validate(const EventSpec& e) {
  auto finite = [](double v) { return std::isfinite(v); };
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ULevel> || std::is_same_v<T, WLevel>) {
          if (!finite(c.level)) throw PreconditionError("event level must be finite");
        } else if constexpr (std::is_same_v<T, NearPoint>) {
          if (!finite(c.u) || !finite(c.w) || !(c.radius > 0.0)) {
            throw PreconditionError("distance event needs a finite target and a positive radius");
          }
        } else if constexpr (std::is_same_v<T, LeavesBox>) {
          if (!(c.u_min < c.u_max) || !(c.w_min < c.w_max)) throw PreconditionError("event box is empty");
        } else {
          if (!finite(c.xi)) throw PreconditionError("xi bound must be finite");
        }
      },
      e.condition);
}

struct LevelTracker {
  int last_sign = 0;
  bool pending = false;
  std::size_t pending_index = 0;  // sample index of the near-zero state
};

class Integrator {
 public:
  Integrator(const ModelParams& p, Direction dir, std::span<const EventSpec> events, const IntegratorOptions& o)
      : p_(p), dir_(dir), events_(events), o_(o), sgn_(dir == Direction::forward ? 1.0 : -1.0) {}

  Trajectory run(const PhaseState& seed) {
    Trajectory t{p_, dir_, {}, Termination::max_span, std::nullopt, std::nullopt, {}, 0, 0};
    t.samples.push_back(seed);

    std::vector<LevelTracker> level(events_.size());
    for (std::size_t i = 0; i < events_.size(); ++i) {
      const double g = event_function(events_[i], seed, dir_);
      if (is_level(events_[i])) {
        level[i].last_sign = sign_of(g, o_.touch_tol);
      } else if (g > 0.0) {
        finish_event(t, i);
        return t;
      }
    }

    PhaseState y = seed;
    Derivative f = vector_field(y, p_, o_.smooth);
    double h = std::min(o_.initial_step, o_.max_step);

    while (t.accepted_steps < o_.max_steps) {
      const double remaining = o_.max_span - std::abs(y.xi - seed.xi);
      if (remaining <= 0.0) {
        t.termination = Termination::max_span;
        return t;
      }
      const double hh = std::min({h, o_.max_step, remaining});
      if (hh < o_.min_step * std::max(1.0, std::abs(y.xi))) {
        throw IntegrationError("step size underflow at xi = " + std::to_string(y.xi), y);
      }

      const auto step = dp5_step(y, f, sgn_ * hh, p_, o_.smooth);
      const double err = error_norm(y, step);
      if (!(err <= 1.0)) {
        ++t.rejected_steps;
        h = hh * (std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2);
        continue;
      }
      ++t.accepted_steps;

      // earliest sign change among the events inside this step
      double best_theta = std::numeric_limits<double>::infinity();
      std::size_t best = 0;
      PhaseState best_state;
      for (std::size_t i = 0; i < events_.size(); ++i) {
        const double g0 = event_function(events_[i], y, dir_);
        const double g1 = event_function(events_[i], step.y, dir_);
        if (is_level(events_[i])) {
          auto& tr = level[i];
          const int s1 = sign_of(g1, o_.touch_tol);
          if (tr.pending) continue;  // resolved after the step is recorded
          if (s1 != 0 && tr.last_sign != 0 && s1 != tr.last_sign &&
              direction_matches(events_[i].direction, tr.last_sign)) {
            const int side0 = g0 > 0.0 ? 1 : -1;
            auto [theta, s] = localize(y, f, hh, [&](const PhaseState& st) {
              return (event_function(events_[i], st, dir_) > 0.0 ? 1 : -1) != side0;
            });
            if (theta < best_theta) {
              best_theta = theta;
              best = i;
              best_state = s;
            }
          }
        } else if (g0 <= 0.0 && g1 > 0.0) {
          auto [theta, s] =
              localize(y, f, hh, [&](const PhaseState& st) { return event_function(events_[i], st, dir_) > 0.0; });
          if (theta < best_theta) {
            best_theta = theta;
            best = i;
            best_state = s;
          }
        }
      }

      if (std::isfinite(best_theta)) {
        emit_dense(t, y, f, best_state, vector_field(best_state, p_, o_.smooth), best_theta * hh);
        finish_event(t, best);
        return t;
      }

      emit_dense(t, y, f, step.y, step.f_end, hh);

      // level trackers: promote near-zero samples to touches or crossings
      for (std::size_t i = 0; i < events_.size(); ++i) {
        if (!is_level(events_[i])) continue;
        auto& tr = level[i];
        const int s1 = sign_of(event_function(events_[i], step.y, dir_), o_.touch_tol);
        if (tr.pending) {
          if (s1 == 0) continue;
          tr.pending = false;
          const PhaseState at = t.samples[tr.pending_index];
          if (tr.last_sign != 0 && s1 != tr.last_sign) {
            if (direction_matches(events_[i].direction, tr.last_sign)) {
              t.samples.resize(tr.pending_index + 1);
              finish_event(t, i);
              return t;
            }
          } else if (tr.last_sign != 0) {
            t.touches.push_back(at);
          }
          tr.last_sign = s1;
        } else if (s1 == 0) {
          tr.pending = true;
          tr.pending_index = t.samples.size() - 1;
        } else {
          tr.last_sign = s1;
        }
      }

      y = step.y;
      f = step.f_end;
      h = hh * (err > 0.0 ? std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2))) : 5.0);
    }
    t.termination = Termination::max_steps;
    return t;
  }

 private:
  double error_norm(const PhaseState& y0, const detail::Dp5Step& s) const {
    const double su = o_.abs_tol + o_.rel_tol * std::max(std::abs(y0.u), std::abs(s.y.u));
    const double sw = o_.abs_tol + o_.rel_tol * std::max(std::abs(y0.w), std::abs(s.y.w));
    const double eu = s.err_u / su;
    const double ew = s.err_w / sw;
    if (!std::isfinite(s.y.u) || !std::isfinite(s.y.w)) return std::numeric_limits<double>::infinity();
    return std::sqrt(0.5 * (eu * eu + ew * ew));
  }

  // Bisection on the fraction of the step; `past` reports whether the event
  // side has been reached. Returns the first state on the far side.
  template <class Past>
  std::pair<double, PhaseState> localize(const PhaseState& y0, const Derivative& f0, double hh, Past past) const {
    double lo = 0.0;
    double hi = 1.0;
    PhaseState hi_state = dp5_step(y0, f0, sgn_ * hh, p_, o_.smooth).y;
    while ((hi - lo) * hh > o_.event_xi_tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const PhaseState s = dp5_step(y0, f0, sgn_ * mid * hh, p_, o_.smooth).y;
      if (past(s)) {
        hi = mid;
        hi_state = s;
      } else {
        lo = mid;
      }
    }
    return {hi, hi_state};
  }

  // Appends interior samples (when dense) and then `y1`.
  void emit_dense(Trajectory& t, const PhaseState& y0, const Derivative& f0, const PhaseState& y1,
                  const Derivative& f1, double span) const {
    if (o_.dense && span > 0.0) {
      const double curv = std::max(std::abs(f1.du - f0.du), std::abs(f1.dw - f0.dw)) / span;
      const double want = std::ceil(span * std::sqrt(curv / (8.0 * o_.abs_tol)));
      const auto m = static_cast<std::size_t>(std::clamp(want, 1.0, 1e5));
      for (std::size_t j = 1; j < m; ++j) {
        const double sub = span * static_cast<double>(j) / static_cast<double>(m);
        t.samples.push_back(dp5_step(y0, f0, sgn_ * sub, p_, o_.smooth).y);
      }
    }
    t.samples.push_back(y1);
  }

  void finish_event(Trajectory& t, std::size_t i) const {
    t.termination = Termination::event;
    t.fired_event = i;
    if (const auto* np = std::get_if<NearPoint>(&events_[i].condition); np && np->w == 0.0) {
      if (np->u == p_.alpha()) t.converged_to = Equilibrium::alpha_point;
      if (np->u == 1.0) t.converged_to = Equilibrium::one_point;
    }
  }

  ModelParams p_;
  Direction dir_;
  std::span<const EventSpec> events_;
  IntegratorOptions o_;
  double sgn_;
};

}  // namespace

EventSpec EventSpec::u_crosses(double level, Crossing dir) { return {ULevel{level}, dir}; }
EventSpec EventSpec::w_crosses(double level, Crossing dir) { return {WLevel{level}, dir}; }
EventSpec EventSpec::near(double u, double w, double radius) { return {NearPoint{u, w, radius}, Crossing::any}; }
EventSpec EventSpec::leaves_box(const LeavesBox& box) { return {box, Crossing::any}; }
EventSpec EventSpec::xi_exceeds(double xi) { return {XiBound{xi}, Crossing::any}; }

std::string_view to_string(Termination t) noexcept {
  switch (t) {
    case Termination::event: return "event";
    case Termination::max_span: return "max_span";
    case Termination::max_steps: return "max_steps";
  }
  return "unknown";
}

double event_function(const EventSpec& e, const PhaseState& s, Direction direction) noexcept {
  return std::visit(
      [&](const auto& c) -> double {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ULevel>) {
          return s.u - c.level;
        } else if constexpr (std::is_same_v<T, WLevel>) {
          return s.w - c.level;
        } else if constexpr (std::is_same_v<T, NearPoint>) {
          return c.radius - std::hypot(s.u - c.u, s.w - c.w);
        } else if constexpr (std::is_same_v<T, LeavesBox>) {
          return std::max({s.u - c.u_max, c.u_min - s.u, s.w - c.w_max, c.w_min - s.w});
        } else {
          return direction == Direction::forward ? s.xi - c.xi : c.xi - s.xi;
        }
      },
      e.condition);
}

Trajectory integrate(const PhaseState& seed, const ModelParams& params, Direction direction,
                     std::span<const EventSpec> events, const IntegratorOptions& options) {
  if (!std::isfinite(seed.xi) || !std::isfinite(seed.u) || !std::isfinite(seed.w)) {
    throw PreconditionError("seed state must be finite");
  }
  if (events.empty() && !std::isfinite(options.max_span) && options.max_steps == 0) {
    throw PreconditionError("integration needs at least one stopping criterion");
  }
  if (!(options.abs_tol > 0.0) || !(options.rel_tol >= 0.0) || !(options.max_step > 0.0) ||
      !(options.initial_step > 0.0) || !(options.max_span > 0.0)) {
    throw PreconditionError("integrator tolerances, steps and span must be positive");
  }
  for (const auto& e : events) validate(e);
  return Integrator(params, direction, events, options).run(seed);
}

std::vector<PhaseState> sample_on_grid(const PhaseState& start, const ModelParams& params, double first_xi,
                                       double step, std::size_t max_count,
                                       const std::function<bool(const PhaseState&)>& stop,
                                       const GridSamplerOptions& options) {
  if (!(step != 0.0) || !std::isfinite(step)) throw PreconditionError("grid step must be nonzero");
  if (!(options.max_substep > 0.0)) throw PreconditionError("substep must be positive");
  const double sgn = step > 0.0 ? 1.0 : -1.0;
  if (sgn * (first_xi - start.xi) < 0.0) {
    throw PreconditionError("first grid point lies behind the start state");
  }

  std::vector<PhaseState> out;
  PhaseState y = start;
  Derivative f = vector_field(y, params, options.smooth);
  for (std::size_t k = 0; k < max_count; ++k) {
    const double target = first_xi + static_cast<double>(k) * step;
    const double gap = target - y.xi;
    const auto n = static_cast<std::size_t>(std::ceil(std::abs(gap) / options.max_substep));
    for (std::size_t j = 0; j < n; ++j) {
      const double sub = (target - y.xi) / static_cast<double>(n - j);
      const auto s = detail::dp5_step(y, f, sub, params, options.smooth);
      y = s.y;
      f = s.f_end;
    }
    y.xi = target;
    out.push_back(y);
    if (stop && stop(y)) break;
  }
  return out;
}

}  // namespace fbrd
