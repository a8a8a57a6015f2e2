#include "fbrd/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

namespace fbrd {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void check_options(const ProfileOptions& o) {
  if (!(o.step > 0.0) || !std::isfinite(o.step)) throw PreconditionError("profile grid step must be positive");
  if (!(o.zero_padding >= 0.0)) throw PreconditionError("zero padding must be nonnegative");
  if (!(o.tail_tol > 0.0)) throw PreconditionError("tail tolerance must be positive");
}

std::size_t max_count(const ProfileOptions& o) {
  return static_cast<std::size_t>(std::ceil(o.max_span / o.step)) + 1;
}

double dist(const PhaseState& s, double u, double w) { return std::hypot(s.u - u, s.w - w); }

// Samples indexed by integer grid position; xi = index * h exactly.
class GridBuilder {
 public:
  explicit GridBuilder(double h) : h_(h) {}

  void push(std::int64_t i, double u) {
    if (!u_.empty() && i != first_ + static_cast<std::int64_t>(u_.size())) {
      throw NumericalError("profile pieces are not contiguous on the grid");
    }
    if (u_.empty()) first_ = i;
    u_.push_back(std::max(u, 0.0));
  }
  void zeros_through(std::int64_t last) {
    for (std::int64_t i = next(); i <= last; ++i) push(i, 0.0);
  }
  [[nodiscard]] std::int64_t next() const { return first_ + static_cast<std::int64_t>(u_.size()); }

  void finish(WaveProfile& p) const {
    p.grid_step = h_;
    p.xi.resize(u_.size());
    for (std::size_t k = 0; k < u_.size(); ++k) p.xi[k] = static_cast<double>(first_ + static_cast<std::int64_t>(k)) * h_;
    p.u = u_;
    for (auto& z : p.zero_intervals) {
      z.lo = std::max(z.lo, p.xi.front());
      z.hi = std::min(z.hi, p.xi.back());
    }
  }

 private:
  double h_;
  std::int64_t first_ = 0;
  std::vector<double> u_;
};

// First rising w = 0 crossing found with the fixed-step scheme of the grid
// sampler, so that its location is consistent with the sampled values. Near
// the saddle an adaptive run would shift the timing by far more than a grid
// step tolerance allows.
PhaseState rising_w_crossing(const PhaseState& start, const ModelParams& p, const ProfileOptions& o) {
  const double d = o.sampler.max_substep;
  const auto n = static_cast<std::size_t>(std::ceil(o.max_span / d));
  bool was_negative = start.w < 0.0;
  const auto s = sample_on_grid(
      start, p, start.xi, d, n,
      [&](const PhaseState& st) {
        if (was_negative && st.w >= 0.0) return true;
        if (st.w < 0.0) was_negative = true;
        return std::abs(st.u) > o.shooting.box.u_max || std::abs(st.w) > o.shooting.box.w_max;
      },
      o.sampler);
  if (s.size() < 2 || !(s.back().w >= 0.0 && s[s.size() - 2].w < 0.0)) {
    throw NumericalError("orbit at alpha=" + fmt(p.alpha()) + ", c=" + fmt(p.c()) + " does not return to w = 0");
  }
  const PhaseState before = s[s.size() - 2];
  double lo = 0.0;
  double hi = d;
  PhaseState at = s.back();
  while (hi - lo > o.shooting.integrator.event_xi_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const PhaseState m = sample_on_grid(before, p, before.xi + mid, d, 1, nullptr, o.sampler).front();
    if (m.w >= 0.0) {
      hi = mid;
      at = m;
    } else {
      lo = mid;
    }
  }
  return at;
}

// Left piece of the 1 -> 0 wave: the unstable manifold at speed c up to its
// first rising w = 0 crossing, translated so that this point sits at xi = 0.
// Pushes grid indices [ceil(-xi_e/h), -1] and the zero at 0.
void push_left_piece(GridBuilder& g, double alpha, double c, const ProfileOptions& o) {
  const ModelParams p(alpha, c);
  const double h = o.step;
  const auto seed = manifold_seed(p, ManifoldBranch::unstable_below, o.shooting.offset);
  const double xi_e = rising_w_crossing(seed, p, o).xi - seed.xi;
  PhaseState start = seed;
  start.xi = -xi_e;
  const auto i_first = static_cast<std::int64_t>(std::ceil(-xi_e / h));
  const auto count = static_cast<std::size_t>(std::max<std::int64_t>(0, -i_first));
  const auto s = sample_on_grid(start, p, static_cast<double>(i_first) * h, h, count, nullptr, o.sampler);
  for (std::size_t k = 0; k < s.size(); ++k) g.push(i_first + static_cast<std::int64_t>(k), s[k].u);
  g.push(0, 0.0);
}

// Forward orbit of the smooth field from `start` on grid indices i_first, ...
// until `done` holds.
void push_forward(GridBuilder& g, const PhaseState& start, const ModelParams& p, std::int64_t i_first,
                  const std::function<bool(const PhaseState&)>& done, const ProfileOptions& o, const char* what) {
  const double h = o.step;
  const double x0 = static_cast<double>(i_first) * h;
  const auto s = sample_on_grid(start, p, x0, h, max_count(o), done, o.sampler);
  if (s.empty() || !done(s.back())) {
    throw NumericalError(std::string(what) + " did not settle within xi-span " + fmt(o.max_span) +
                         " (alpha=" + fmt(p.alpha()) + ", c=" + fmt(p.c()) + ")");
  }
  for (std::size_t k = 0; k < s.size(); ++k) g.push(i_first + static_cast<std::int64_t>(k), s[k].u);
}

std::int64_t pad_steps(const ProfileOptions& o) {
  return static_cast<std::int64_t>(std::ceil(o.zero_padding / o.step));
}

// Index of the last grid point at or before x (with round-off slack).
std::int64_t floor_index(double x, double h) {
  return static_cast<std::int64_t>(std::floor(x / h + 1e-9));
}

}  // namespace

std::string_view to_string(ProfileKind k) noexcept {
  switch (k) {
    case ProfileKind::monostable_kpp: return "monostable-kpp";
    case ProfileKind::bistable: return "bistable";
    case ProfileKind::plateau: return "plateau";
    case ProfileKind::pushed: return "pushed";
    case ProfileKind::stationary_bump: return "stationary-bump";
    case ProfileKind::stationary_dip: return "stationary-dip";
    case ProfileKind::stationary_glued: return "stationary-glued";
    case ProfileKind::stationary_periodic: return "stationary-periodic";
  }
  return "unknown";
}

std::string_view to_string(Limit l) noexcept {
  switch (l) {
    case Limit::zero: return "0";
    case Limit::alpha: return "alpha";
    case Limit::one: return "1";
    case Limit::none: return "none";
  }
  return "unknown";
}

std::string_view to_string(StationaryKind k) noexcept {
  switch (k) {
    case StationaryKind::bump: return "bump";
    case StationaryKind::dip: return "dip";
    case StationaryKind::glued: return "glued";
    case StationaryKind::periodic: return "periodic";
  }
  return "unknown";
}

double WaveProfile::min_u() const {
  if (u.empty()) throw PreconditionError("empty profile");
  return *std::min_element(u.begin(), u.end());
}

double WaveProfile::max_u() const {
  if (u.empty()) throw PreconditionError("empty profile");
  return *std::max_element(u.begin(), u.end());
}

WaveProfile bistable_profile(double alpha, const ProfileOptions& o) {
  require_alpha(alpha);
  return bistable_profile(alpha, bistable_speed(alpha, o.speed_tol, o.shooting), o);
}

WaveProfile bistable_profile(double alpha, const SpeedEstimate& c_bistable, const ProfileOptions& o) {
  require_alpha(alpha);
  check_options(o);
  GridBuilder g(o.step);
  push_left_piece(g, alpha, c_bistable.value, o);
  const double pad_end = static_cast<double>(pad_steps(o)) * o.step;
  g.zeros_through(pad_steps(o));

  WaveProfile p;
  p.kind = ProfileKind::bistable;
  p.alpha = alpha;
  p.speed = c_bistable.value;
  p.free_boundaries = {0.0};
  p.zero_intervals = {{0.0, pad_end}};
  p.limits = {Limit::one, Limit::none};
  p.shape = WaveShape::monotone;
  g.finish(p);
  return p;
}

WaveProfile plateau_profile(double alpha, double L, const ProfileOptions& o) {
  require_alpha(alpha);
  check_options(o);
  if (!(alpha < 1.0 / 3.0) || is_one_third(alpha)) {
    throw PreconditionError("plateau profiles need alpha < 1/3, got " + fmt(alpha));
  }
  if (!(L >= 0.0) || !std::isfinite(L)) throw PreconditionError("plateau length must be finite and >= 0");
  const double h = o.step;
  const auto cb = bistable_speed(alpha, o.speed_tol, o.shooting);
  const ModelParams params(alpha, cb.value);

  GridBuilder g(h);
  push_left_piece(g, alpha, cb.value, o);
  const std::int64_t i_L = floor_index(L, h);
  g.zeros_through(i_L);
  push_forward(
      g, PhaseState{L, 0.0, 0.0}, params, i_L + 1, [&](const PhaseState& s) { return dist(s, alpha, 0.0) < o.tail_tol; },
      o, "plateau right piece");

  WaveProfile p;
  p.kind = ProfileKind::plateau;
  p.alpha = alpha;
  p.speed = cb.value;
  p.plateau_length = L;
  p.free_boundaries = L > 0.0 ? std::vector<double>{0.0, L} : std::vector<double>{0.0};
  p.zero_intervals = {{0.0, L}};
  p.limits = {Limit::one, Limit::alpha};
  p.shape = WaveShape::touches_zero_nonunique;
  g.finish(p);
  return p;
}

WaveProfile monostable_profile(double alpha, double c, const ProfileOptions& o) {
  require_alpha(alpha);
  check_options(o);
  const auto cls = classify(alpha, c, BoundaryCondition::one_to_alpha, o.speed_tol, o.shooting);
  if (!cls.exists || cls.shape == WaveShape::touches_zero_nonunique) {
    throw NoWaveError("no strictly positive 1 -> alpha wave at alpha=" + fmt(alpha) + ", c=" + fmt(c) +
                          " (classification: " + std::string(to_string(cls.shape)) + ")",
                      cls);
  }
  const ModelParams params(alpha, c);
  const double h = o.step;
  const double radius = o.shooting.convergence_radius;
  auto seed = manifold_seed(params, ManifoldBranch::unstable_below, o.shooting.offset);
  const auto s = sample_on_grid(
      seed, params, 0.0, h, max_count(o), [&](const PhaseState& st) { return dist(st, alpha, 0.0) < radius; },
      o.sampler);
  if (s.empty() || dist(s.back(), alpha, 0.0) >= radius) {
    throw NumericalError("monostable orbit at alpha=" + fmt(alpha) + ", c=" + fmt(c) + " did not converge within xi-span " +
                         fmt(o.max_span));
  }

  // anchor: first crossing of the mid level (1 + alpha)/2
  const double mid = 0.5 * (1.0 + alpha);
  double xi_mid = 0.0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    if (s[k - 1].u >= mid && s[k].u < mid) {
      xi_mid = s[k - 1].xi + (s[k - 1].u - mid) / (s[k - 1].u - s[k].u) * h;
      break;
    }
  }
  const auto shift = static_cast<std::int64_t>(std::llround(xi_mid / h));

  GridBuilder g(h);
  for (std::size_t k = 0; k < s.size(); ++k) g.push(static_cast<std::int64_t>(k) - shift, s[k].u);

  WaveProfile p;
  p.kind = ProfileKind::monostable_kpp;
  p.alpha = alpha;
  p.speed = c;
  p.limits = {Limit::one, Limit::alpha};
  p.shape = cls.shape;
  g.finish(p);
  return p;
}

WaveProfile pushed_profile(double alpha, double c, const ProfileOptions& o) {
  require_alpha(alpha);
  check_options(o);
  const auto cls = classify(alpha, c, BoundaryCondition::zero_to_alpha, o.speed_tol, o.shooting);
  if (!cls.exists) {
    throw NoWaveError("no 0 -> alpha wave at alpha=" + fmt(alpha) + ", c=" + fmt(c) + ": c must exceed c_**", cls);
  }
  const ModelParams params(alpha, c);
  const double radius = o.shooting.convergence_radius;
  const std::int64_t pad = pad_steps(o);

  GridBuilder g(o.step);
  g.push(-pad, 0.0);
  g.zeros_through(0);
  push_forward(
      g, PhaseState{0.0, 0.0, 0.0}, params, 1, [&](const PhaseState& s) { return dist(s, alpha, 0.0) < radius; }, o,
      "pushed orbit");

  WaveProfile p;
  p.kind = ProfileKind::pushed;
  p.alpha = alpha;
  p.speed = c;
  p.free_boundaries = {0.0};
  p.zero_intervals = {{-static_cast<double>(pad) * o.step, 0.0}};
  p.limits = {Limit::none, Limit::alpha};
  p.shape = cls.shape;
  g.finish(p);
  return p;
}

namespace {

double root_in_alpha_one(double alpha, double target) {
  // F is strictly decreasing on (alpha, 1) from F(alpha) > 0 to F(1) = 0
  auto g = [&](double u) { return potential(u, alpha) - target; };
  const double lo = alpha;
  const double hi = 1.0;
  if (!(g(lo) > 0.0 && g(hi) < 0.0)) {
    throw PreconditionError("no conjugate turning point in (alpha, 1) for alpha=" + fmt(alpha));
  }
  boost::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(
      g, lo, hi, [](double a, double b) { return std::abs(b - a) <= 1e-12; }, iters);
  return 0.5 * (r.first + r.second);
}

void require_periodic_u0(double alpha, double u0) {
  const double lo = std::max(homoclinic_turning_point(alpha), 0.0);
  if (!(u0 > lo && u0 < alpha)) {
    throw PreconditionError("periodic orbit needs u0 in (" + fmt(lo) + ", " + fmt(alpha) + "), got " + fmt(u0));
  }
}

WaveProfile bump(double alpha, const ProfileOptions& o) {
  if (!(alpha < 1.0 / 3.0) || is_one_third(alpha)) {
    throw PreconditionError("stationary bump needs alpha < 1/3, got " + fmt(alpha));
  }
  const double h = o.step;
  const ModelParams params(alpha, 0.0);
  const double u1 = bump_max(alpha);
  const PhaseState top{0.0, u1, 0.0};
  const double xi_fb = rising_w_crossing(top, params, o).xi;

  // grid points strictly inside the support
  const auto K = static_cast<std::int64_t>(std::ceil(xi_fb / h)) - 1;
  const auto s = sample_on_grid(top, params, 0.0, h, static_cast<std::size_t>(K + 1), nullptr, o.sampler);
  const std::int64_t pad = K + pad_steps(o);

  GridBuilder g(h);
  g.push(-pad, 0.0);
  g.zeros_through(-K - 1);
  for (std::int64_t k = K; k >= 1; --k) g.push(-k, s[static_cast<std::size_t>(k)].u);
  for (std::int64_t k = 0; k <= K; ++k) g.push(k, s[static_cast<std::size_t>(k)].u);
  g.zeros_through(pad);

  WaveProfile p;
  p.kind = ProfileKind::stationary_bump;
  p.alpha = alpha;
  p.speed = 0.0;
  p.free_boundaries = {-xi_fb, xi_fb};
  p.zero_intervals = {{-static_cast<double>(pad) * h, -xi_fb}, {xi_fb, static_cast<double>(pad) * h}};
  p.limits = {Limit::none, Limit::none};
  p.shape.reset();
  g.finish(p);
  return p;
}

WaveProfile dip(double alpha, const ProfileOptions& o) {
  if (!(alpha > 1.0 / 3.0) || is_one_third(alpha)) {
    throw PreconditionError("stationary dip needs alpha > 1/3, got " + fmt(alpha));
  }
  // From the turning point out to the saddle; the drift off the homoclinic
  // grows like exp(Lambda xi) but the span needed for tail_tol is short.
  const double h = o.step;
  const ModelParams params(alpha, 0.0);
  const PhaseState bottom{0.0, homoclinic_turning_point(alpha), 0.0};
  auto done = [&](const PhaseState& s) { return dist(s, 1.0, 0.0) < o.tail_tol || s.u > 1.0 || s.w < 0.0; };
  const auto s = sample_on_grid(bottom, params, 0.0, h, max_count(o), done, o.sampler);
  if (s.empty() || !done(s.back())) throw NumericalError("homoclinic half-orbit did not reach the saddle");
  const auto K = static_cast<std::int64_t>(s.size()) - 1;

  GridBuilder g(h);
  for (std::int64_t k = K; k >= 1; --k) g.push(-k, s[static_cast<std::size_t>(k)].u);
  for (std::int64_t k = 0; k <= K; ++k) g.push(k, s[static_cast<std::size_t>(k)].u);

  WaveProfile p;
  p.kind = ProfileKind::stationary_dip;
  p.alpha = alpha;
  p.speed = 0.0;
  p.limits = {Limit::one, Limit::one};
  p.shape.reset();
  g.finish(p);
  return p;
}

WaveProfile glued(double alpha, double L, const ProfileOptions& o) {
  if (!is_one_third(alpha)) throw PreconditionError("glued stationary profiles need alpha = 1/3, got " + fmt(alpha));
  if (!(L >= 0.0) || !std::isfinite(L)) throw PreconditionError("gap length must be finite and >= 0");
  const double h = o.step;
  const ModelParams params(alpha, 0.0);

  GridBuilder g(h);
  push_left_piece(g, alpha, 0.0, o);
  const std::int64_t i_L = floor_index(L, h);
  g.zeros_through(i_L);
  push_forward(
      g, PhaseState{L, 0.0, 0.0}, params, i_L + 1,
      [&](const PhaseState& s) { return dist(s, 1.0, 0.0) < o.tail_tol || s.u > 1.0 || s.w < 0.0; }, o,
      "glued right piece");

  WaveProfile p;
  p.kind = ProfileKind::stationary_glued;
  p.alpha = alpha;
  p.speed = 0.0;
  p.plateau_length = L;
  p.free_boundaries = L > 0.0 ? std::vector<double>{0.0, L} : std::vector<double>{0.0};
  p.zero_intervals = {{0.0, L}};
  p.limits = {Limit::one, Limit::one};
  p.shape.reset();
  g.finish(p);
  return p;
}

WaveProfile periodic(double alpha, double u0, const ProfileOptions& o) {
  require_periodic_u0(alpha, u0);
  const double h = o.step;
  const ModelParams params(alpha, 0.0);
  const double period = orbit_period(alpha, u0);
  const auto n = static_cast<std::size_t>(std::floor(period / h)) + 1;
  const auto s = sample_on_grid(PhaseState{0.0, u0, 0.0}, params, 0.0, h, n, nullptr, o.sampler);

  GridBuilder g(h);
  for (std::size_t k = 0; k < s.size(); ++k) g.push(static_cast<std::int64_t>(k), s[k].u);

  WaveProfile p;
  p.kind = ProfileKind::stationary_periodic;
  p.alpha = alpha;
  p.speed = 0.0;
  p.periodic_u0 = u0;
  p.limits = {Limit::none, Limit::none};
  p.shape.reset();
  g.finish(p);
  return p;
}

}  // namespace

WaveProfile stationary_profile(double alpha, const StationarySpec& spec, const ProfileOptions& o) {
  require_alpha(alpha);
  check_options(o);
  switch (spec.kind) {
    case StationaryKind::bump: return bump(alpha, o);
    case StationaryKind::dip: return dip(alpha, o);
    case StationaryKind::glued: return glued(alpha, spec.L, o);
    case StationaryKind::periodic: return periodic(alpha, spec.u0, o);
  }
  throw PreconditionError("unknown stationary kind");
}

double bump_max(double alpha) {
  require_alpha(alpha);
  if (!(alpha < 1.0 / 3.0) || is_one_third(alpha)) {
    throw PreconditionError("stationary bump needs alpha < 1/3, got " + fmt(alpha));
  }
  return root_in_alpha_one(alpha, potential(0.0, alpha));
}

double conjugate_turning_point(double alpha, double u0) {
  require_alpha(alpha);
  if (!(u0 >= homoclinic_turning_point(alpha) && u0 < alpha)) {
    throw PreconditionError("turning point must lie in [(3a-1)/2, alpha), got " + fmt(u0));
  }
  return root_in_alpha_one(alpha, potential(u0, alpha));
}

double orbit_period(double alpha, double u0) {
  require_alpha(alpha);
  if (!(u0 > homoclinic_turning_point(alpha) && u0 < alpha)) {
    throw PreconditionError("closed orbits need u0 in ((3a-1)/2, alpha), got " + fmt(u0));
  }
  const double u1 = conjugate_turning_point(alpha, u0);
  // F(u) - F(u0) = (u - u0)(u - u1)(u - r)/3 with r > u1 the third root
  const double r = 1.5 * (1.0 + alpha) - u0 - u1;
  const double m = 0.5 * (u0 + u1);
  const double a = 0.5 * (u1 - u0);
  auto integrand = [&](double theta) {
    const double gap = r - m - a * std::sin(theta);
    return 1.0 / std::sqrt((2.0 / 3.0) * gap);
  };
  const double half_pi = 0.5 * 3.14159265358979323846;
  const double T = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, -half_pi, half_pi, 15, 1e-14);
  return 2.0 * T;
}

double orbit_period_loop(double alpha, double u0, const IntegratorOptions& o) {
  require_periodic_u0(alpha, u0);
  const ModelParams params(alpha, 0.0);
  auto io = o;
  io.dense = false;
  const EventSpec down[] = {EventSpec::w_crosses(0.0, Crossing::falling)};
  const EventSpec up[] = {EventSpec::w_crosses(0.0, Crossing::rising)};
  const auto a = integrate(PhaseState{0.0, u0, 0.0}, params, Direction::forward, down, io);
  if (!a.fired(0)) throw NumericalError("closed orbit did not reach its upper turning point");
  const auto b = integrate(a.back(), params, Direction::forward, up, io);
  if (!b.fired(0)) throw NumericalError("closed orbit did not return to its lower turning point");
  return b.back().xi;
}

WaveProfile reflect(const WaveProfile& p) {
  WaveProfile r = p;
  r.speed = -p.speed;
  r.xi.assign(p.xi.rbegin(), p.xi.rend());
  for (auto& x : r.xi) x = -x;
  r.u.assign(p.u.rbegin(), p.u.rend());
  r.free_boundaries.assign(p.free_boundaries.rbegin(), p.free_boundaries.rend());
  for (auto& x : r.free_boundaries) x = -x;
  r.zero_intervals.clear();
  for (auto it = p.zero_intervals.rbegin(); it != p.zero_intervals.rend(); ++it) r.zero_intervals.push_back({-it->hi, -it->lo});
  r.limits = {p.limits.second, p.limits.first};
  return r;
}

// Abscissae this close to a sample (relative to the step) take the sample
// value, so exact zeros survive round-off in xi.
constexpr double kSnap = 1e-9;

double interpolate(const WaveProfile& p, double xi) {
  if (p.xi.empty()) throw PreconditionError("empty profile");
  if (xi <= p.xi.front()) return p.u.front();
  if (xi >= p.xi.back()) return p.u.back();
  const auto it = std::upper_bound(p.xi.begin(), p.xi.end(), xi);
  const auto k = static_cast<std::size_t>(it - p.xi.begin());
  const double t = (xi - p.xi[k - 1]) / (p.xi[k] - p.xi[k - 1]);
  if (t < kSnap) return p.u[k - 1];
  if (t > 1.0 - kSnap) return p.u[k];
  return p.u[k - 1] + t * (p.u[k] - p.u[k - 1]);
}

double residual(const WaveProfile& p) { return residual(p, ModelParams(p.alpha, p.speed)); }

double residual(const WaveProfile& p, const ModelParams& params) {
  const std::size_t n = p.xi.size();
  if (n < 8 || p.u.size() != n) throw PreconditionError("residual needs at least 8 samples, got " + std::to_string(n));
  const double h = p.xi[1] - p.xi[0];
  if (!(h > 0.0)) throw PreconditionError("residual needs an increasing grid");
  for (std::size_t k = 2; k < n; ++k) {
    if (std::abs((p.xi[k] - p.xi[k - 1]) - h) > 1e-9 * std::max(1.0, h)) {
      throw PreconditionError("residual needs a uniform grid");
    }
  }
  const double skip = 1.0001 * h;
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const bool near_fb = std::any_of(p.free_boundaries.begin(), p.free_boundaries.end(),
                                     [&](double x) { return std::abs(p.xi[k] - x) <= skip; });
    if (near_fb) continue;
    const double d2 = (p.u[k + 1] - 2.0 * p.u[k] + p.u[k - 1]) / (h * h);
    const double d1 = (p.u[k + 1] - p.u[k - 1]) / (2.0 * h);
    worst = std::max(worst, std::abs(d2 + params.c() * d1 + reaction(p.u[k], params.alpha())));
  }
  return worst;
}

}  // namespace fbrd
