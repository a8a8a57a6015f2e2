#include "fbrd/pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fbrd {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

double table_value(const std::vector<double>& xs, const std::vector<double>& us, double x) {
  if (x <= xs.front()) return us.front();
  if (x >= xs.back()) return us.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const auto k = static_cast<std::size_t>(it - xs.begin());
  const double t = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
  return us[k - 1] + t * (us[k] - us[k - 1]);
}

// Crossings of `level` between consecutive nodes, linearly interpolated.
std::vector<double> crossings(const PdeState& s, double level) {
  std::vector<double> out;
  const auto& v = s.values;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double a = v[i] - level;
    const double b = v[i + 1] - level;
    if (a == 0.0) {
      out.push_back(s.grid.x(i));
    } else if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
      out.push_back(s.grid.x(i) + a / (a - b) * s.grid.dx);
    }
  }
  if (!v.empty() && v.back() == level) out.push_back(s.grid.x(v.size() - 1));
  return out;
}

}  // namespace

Grid1D Grid1D::make(double x_min, double x_max, double dx) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
    throw PreconditionError("grid needs finite x_min < x_max");
  }
  if (!(dx > 0.0) || !std::isfinite(dx)) throw PreconditionError("grid spacing must be positive");
  const double cells = std::round((x_max - x_min) / dx);
  const double span = x_max - x_min;
  if (std::abs(cells * dx - span) > 1e-12 * span + 1e-12) {
    throw PreconditionError("domain length " + fmt(span) + " is not a multiple of dx = " + fmt(dx));
  }
  Grid1D g{x_min, x_max, dx, static_cast<std::size_t>(cells) + 1};
  if (g.n < 16) throw PreconditionError("grid needs at least 16 points, got " + std::to_string(g.n));
  return g;
}

std::string_view datum_kind(const InitialDatum& d) noexcept {
  constexpr std::string_view names[] = {"tanh-front", "sech-dip", "exp-dip", "constant", "profile", "table"};
  return names[d.index()];
}

std::vector<double> initial_values(const InitialDatum& d, const Grid1D& g) {
  std::vector<double> v(g.n);
  auto fill = [&](auto&& f) {
    for (std::size_t i = 0; i < g.n; ++i) v[i] = std::max(0.0, f(g.x(i)));
  };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TanhFront>) {
          fill([&](double x) { return s.amplitude * (std::tanh(s.orientation * s.steepness * (x - s.center)) + 1.0) + s.offset; });
        } else if constexpr (std::is_same_v<T, SechDip>) {
          fill([&](double x) { return s.base - s.depth / std::cosh(s.width * (x - s.center)); });
        } else if constexpr (std::is_same_v<T, ExpDip>) {
          fill([&](double x) { return s.base - s.depth * std::exp(-s.rate * std::abs(x - s.center)); });
        } else if constexpr (std::is_same_v<T, ConstantDatum>) {
          fill([&](double) { return s.value; });
        } else if constexpr (std::is_same_v<T, ProfileDatum>) {
          if (s.profile.xi.empty()) throw PreconditionError("profile datum is empty");
          fill([&](double x) { return s.scale * interpolate(s.profile, x - s.shift); });
        } else {
          if (s.x.size() < 2 || s.x.size() != s.u.size()) {
            throw PreconditionError("table datum needs matching x and u columns with at least 2 rows");
          }
          if (!std::is_sorted(s.x.begin(), s.x.end()) ||
              std::adjacent_find(s.x.begin(), s.x.end()) != s.x.end()) {
            throw PreconditionError("table datum x column must be strictly increasing");
          }
          fill([&](double x) { return table_value(s.x, s.u, x); });
        }
      },
      d);
  for (double x : v) {
    if (!std::isfinite(x)) throw PreconditionError("initial datum is not finite on the grid");
  }
  return v;
}

PdeState initial_state(const InitialDatum& d, const Grid1D& g) { return PdeState{g, initial_values(d, g), 0.0, 0.0}; }

void step(PdeState& s, double alpha, double dt) {
  const double dx = s.grid.dx;
  if (!(dt > 0.0) || dt > kDtFactor * dx * dx * (1.0 + 1e-12)) {
    throw PreconditionError("dt = " + fmt(dt) + " violates 0 < dt <= 0.4 dx^2 = " + fmt(kDtFactor * dx * dx));
  }
  auto& u = s.values;
  const std::size_t n = u.size();
  if (n < 2) throw PreconditionError("state has fewer than two nodes");
  const double r = dt / (dx * dx);
  double removed = 0.0;
  double prev = u[1];  // mirror: u[-1] = u[1]
  for (std::size_t i = 0; i < n; ++i) {
    const double old = u[i];
    const double next = i + 1 < n ? u[i + 1] : prev;  // mirror: u[n] = u[n-2]
    // The cut-off is read on the diffusive predictor: a zero node receiving
    // influx feels f(0+) = -alpha at once. Reading it on `old` alone lets
    // influx below alpha dx^2 leak outward one node per step.
    const double pred = old + r * (prev - 2.0 * old + next);
    double v = old > 0.0 || pred > 0.0 ? pred + dt * reaction_smooth(old, alpha) : pred;
    if (v < 0.0) {
      removed -= v;
      v = 0.0;
    }
    u[i] = v;
    prev = old;
  }
  s.clamped_mass += removed * dx;
  s.time += dt;
}

RunResult run(const PdeState& s0, double alpha, double T, const std::vector<double>& probes, const RunOptions& o) {
  require_alpha(alpha);
  if (!(T > 0.0) || !std::isfinite(T)) throw PreconditionError("run horizon T must be positive");
  if (!(o.dt_factor > 0.0 && o.dt_factor <= kDtFactor)) {
    throw PreconditionError("dt_factor must lie in (0, 0.4], got " + fmt(o.dt_factor));
  }
  if (!std::is_sorted(probes.begin(), probes.end())) throw PreconditionError("probe times must be sorted");
  for (double p : probes) {
    if (!(p >= 0.0 && p <= T)) throw PreconditionError("probe time " + fmt(p) + " outside [0, T]");
  }
  if (s0.values.size() != s0.grid.n) throw PreconditionError("state does not match its grid");

  RunResult r;
  r.alpha = alpha;
  r.dt = o.dt_factor * s0.grid.dx * s0.grid.dx;
  r.initial = s0;
  r.probe_times = probes;
  r.min_value = *std::min_element(s0.values.begin(), s0.values.end());

  PdeState s = s0;
  const double t0 = s0.time;
  double elapsed = 0.0;
  auto record = [&] {
    r.snapshots.push_back(s);
    r.supports.push_back(support_intervals(s));
    r.clamped_mass.push_back(s.clamped_mass);
  };

  std::vector<double> targets = probes;
  if (targets.empty() || targets.back() < T) targets.push_back(T);
  std::size_t recorded = 0;
  for (double target : targets) {
    const double gap = target - elapsed;
    if (gap > 0.0) {
      const auto nsteps = static_cast<std::size_t>(std::ceil(gap / r.dt - 1e-9));
      const double dt = gap / static_cast<double>(nsteps);
      for (std::size_t k = 0; k < nsteps; ++k) {
        step(s, alpha, dt);
        r.min_value = std::min(r.min_value, *std::min_element(s.values.begin(), s.values.end()));
      }
    }
    elapsed = target;
    s.time = t0 + target;
    while (recorded < probes.size() && probes[recorded] == target) {
      record();
      ++recorded;
    }
  }

  r.extinction_time = extinction_time(r);
  for (double level : o.track_levels) r.tracks.push_back(front_track(r, level));
  return r;
}

FrontTrack front_track(const RunResult& r, double level, std::optional<double> start_hint) {
  FrontTrack t;
  t.level = level;
  std::optional<double> last = start_hint;
  bool started = false;
  for (std::size_t k = 0; k < r.snapshots.size(); ++k) {
    const auto xs = crossings(r.snapshots[k], level);
    if (xs.empty()) {
      if (started) {
        t.complete = false;
        break;
      }
      continue;
    }
    double pick = xs.back();
    if (last) {
      pick = *std::min_element(xs.begin(), xs.end(),
                               [&](double a, double b) { return std::abs(a - *last) < std::abs(b - *last); });
    }
    started = true;
    last = pick;
    t.times.push_back(r.probe_times[k]);
    t.positions.push_back(pick);
  }
  if (t.times.empty()) {
    throw NumericalError("no crossing of level " + fmt(level) + " in any snapshot");
  }
  // trailing half of the samples
  const std::size_t n = t.times.size();
  const std::size_t first = n / 2;
  const std::size_t m = n - first;
  t.window_start = t.times[first];
  t.window_end = t.times.back();
  if (m >= 2) {
    double st = 0.0;
    double sx = 0.0;
    for (std::size_t k = first; k < n; ++k) {
      st += t.times[k];
      sx += t.positions[k];
    }
    const double mt = st / static_cast<double>(m);
    const double mx = sx / static_cast<double>(m);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = first; k < n; ++k) {
      num += (t.times[k] - mt) * (t.positions[k] - mx);
      den += (t.times[k] - mt) * (t.times[k] - mt);
    }
    t.fitted_speed = den > 0.0 ? num / den : 0.0;
  }
  return t;
}

std::vector<Interval> support_intervals(const PdeState& s, double threshold) {
  if (!(threshold >= 0.0)) throw PreconditionError("support threshold must be >= 0");
  std::vector<Interval> out;
  const auto& v = s.values;
  const auto& g = s.grid;
  std::size_t i = 0;
  while (i < v.size()) {
    if (!(v[i] > threshold)) {
      ++i;
      continue;
    }
    const std::size_t a = i;
    while (i < v.size() && v[i] > threshold) ++i;
    const std::size_t b = i - 1;
    double lo = g.x(a);
    if (a > 0) lo = g.x(a - 1) + (threshold - v[a - 1]) / (v[a] - v[a - 1]) * g.dx;
    double hi = g.x(b);
    if (b + 1 < v.size()) hi = g.x(b) + (v[b] - threshold) / (v[b] - v[b + 1]) * g.dx;
    out.push_back({lo, hi});
  }
  return out;
}

std::optional<double> extinction_time(const RunResult& r) {
  for (std::size_t k = 0; k < r.snapshots.size(); ++k) {
    const auto& v = r.snapshots[k].values;
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) return r.probe_times[k];
  }
  return std::nullopt;
}

std::optional<double> uniform_extinction_time(double alpha, double gamma0) {
  require_alpha(alpha);
  if (!(gamma0 >= 0.0)) throw PreconditionError("gamma0 must be >= 0");
  if (gamma0 == 0.0) return 0.0;
  if (gamma0 >= alpha) return std::nullopt;
  return std::log(alpha * (1.0 - gamma0) / (alpha - gamma0)) / (1.0 - alpha);
}

double bistable_ode_solution(double alpha, double gamma0, double t) {
  require_alpha(alpha);
  if (!(gamma0 >= 0.0) || !std::isfinite(gamma0)) throw PreconditionError("gamma0 must be finite and >= 0");
  if (!(t >= 0.0)) throw PreconditionError("time must be >= 0");
  if (gamma0 == 0.0 || gamma0 == alpha || gamma0 == 1.0) return gamma0;
  if (const auto te = uniform_extinction_time(alpha, gamma0); te && t >= *te) return 0.0;
  // y = (gamma - alpha)/(1 - gamma) solves y' = (1 - alpha) y
  const double K = (gamma0 - alpha) / (1.0 - gamma0);
  const double growth = (1.0 - alpha) * t;
  if (std::log(std::abs(K)) + growth < 0.0) {
    const double y = K * std::exp(growth);
    return (alpha + y) / (1.0 + y);
  }
  const double z = std::exp(-growth) / K;  // 1/y, small for large t
  return (alpha * z + 1.0) / (z + 1.0);
}

ComparisonReport comparison_check(const RunResult& a, const RunResult& b) {
  if (!(a.initial.grid == b.initial.grid) || a.alpha != b.alpha || a.dt != b.dt || a.probe_times != b.probe_times) {
    throw PreconditionError("comparison needs runs with identical grid, alpha, dt and probe times");
  }
  ComparisonReport rep;
  const double dx = a.initial.grid.dx;
  rep.tolerance = 1e-8 + 10.0 * dx * dx;
  auto scan = [&](const PdeState& A, const PdeState& B, double time) {
    for (std::size_t i = 0; i < A.values.size(); ++i) {
      const double d = A.values[i] - B.values[i];
      if (d > rep.max_violation) {
        rep.max_violation = d;
        rep.worst_time = time;
        rep.worst_x = A.grid.x(i);
      }
    }
  };
  scan(a.initial, b.initial, 0.0);
  if (rep.max_violation > 0.0) {
    throw PreconditionError("initial data are not ordered: A exceeds B by " + fmt(rep.max_violation) + " at x = " +
                            fmt(rep.worst_x));
  }
  for (std::size_t k = 0; k < a.snapshots.size(); ++k) scan(a.snapshots[k], b.snapshots[k], a.probe_times[k]);
  rep.pass = rep.max_violation <= rep.tolerance;
  return rep;
}

double domain_margin(double speed, double T) {
  if (!std::isfinite(speed) || !(T > 0.0)) throw PreconditionError("domain margin needs finite speed and T > 0");
  return (std::abs(speed) + 2.0) * T + 40.0;
}

}  // namespace fbrd
