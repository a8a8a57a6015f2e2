#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fbrd/profiles.hpp"

using namespace fbrd;

namespace {

ProfileOptions step(double h) {
  ProfileOptions o;
  o.step = h;
  return o;
}

bool zero_on(const WaveProfile& p, const Interval& iv) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.xi[i] >= iv.lo && p.xi[i] <= iv.hi && p.u[i] != 0.0) return false;
  }
  return true;
}

// One-sided difference quotients at sample index i.
double slope_left(const WaveProfile& p, std::size_t i) { return (p.u[i] - p.u[i - 1]) / p.grid_step; }
double slope_right(const WaveProfile& p, std::size_t i) { return (p.u[i + 1] - p.u[i]) / p.grid_step; }

std::size_t index_of(const WaveProfile& p, double xi) {
  return static_cast<std::size_t>(std::lround((xi - p.xi.front()) / p.grid_step));
}

int alpha_crossings(const WaveProfile& p) {
  int n = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if ((p.u[i - 1] - p.alpha) * (p.u[i] - p.alpha) < 0.0) ++n;
  }
  return n;
}

void structural(const WaveProfile& p) {
  REQUIRE(p.size() >= 8);
  CHECK(p.min_u() >= 0.0);
  for (const auto& iv : p.zero_intervals) CHECK(zero_on(p, iv));
  for (std::size_t i = 1; i < p.size(); ++i) CHECK(p.xi[i] - p.xi[i - 1] == doctest::Approx(p.grid_step));
}

}  // namespace

TEST_CASE("bistable profiles") {
  const auto p = bistable_profile(0.3, step(1e-3));
  structural(p);
  CHECK(p.speed == doctest::Approx(0.0792).epsilon(0.002 / 0.0792));
  CHECK(p.limits.first == Limit::one);
  CHECK(p.shape == WaveShape::monotone);
  REQUIRE(p.free_boundaries.size() == 1);
  CHECK(p.free_boundaries[0] == 0.0);
  for (std::size_t i = 1; i < p.size(); ++i) CHECK(p.u[i] <= p.u[i - 1]);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.xi[i] >= 0.0) CHECK(p.u[i] == 0.0);
  }
  CHECK(p.u.front() > 0.999);
  CHECK(residual(p) <= 1e-4);

  const auto s = bistable_profile(1.0 / 3.0, step(1e-2));
  CHECK(s.speed == 0.0);
  CHECK(s.min_u() == 0.0);

  const auto n = bistable_profile(0.5, step(1e-2));
  CHECK(n.speed == doctest::Approx(-0.339).epsilon(0.005 / 0.339));
  for (std::size_t i = 1; i < n.size(); ++i) CHECK(n.u[i] <= n.u[i - 1]);
}

TEST_CASE("plateau profiles") {
  const auto a = plateau_profile(0.25, 0.0, step(1e-2));
  structural(a);
  REQUIRE(a.free_boundaries.size() == 1);
  const auto i0 = index_of(a, 0.0);
  CHECK(a.u[i0] == 0.0);
  CHECK(std::abs(slope_left(a, i0) - slope_right(a, i0)) <= 10.0 * a.grid_step);

  const auto b = plateau_profile(0.25, 5.0, step(1e-2));
  structural(b);
  CHECK(b.plateau_length == 5.0);
  REQUIRE(b.free_boundaries.size() == 2);
  CHECK(zero_on(b, {0.0, 5.0}));
  CHECK(b.limits == std::pair{Limit::one, Limit::alpha});
  CHECK(alpha_crossings(b) >= 3);
  for (double fb : b.free_boundaries) {
    const auto i = index_of(b, fb);
    CHECK(std::abs(slope_left(b, i) - slope_right(b, i)) <= 10.0 * b.grid_step);
  }
}

TEST_CASE("monostable profiles") {
  const auto m = monostable_profile(0.5, 1.5, step(1e-2));
  structural(m);
  CHECK(m.shape == WaveShape::monotone);
  CHECK(m.min_u() > 0.0);
  for (std::size_t i = 1; i < m.size(); ++i) CHECK(m.u[i] <= m.u[i - 1] + 1e-12);

  const auto o = monostable_profile(0.5, 0.5, step(1e-2));
  CHECK(o.shape == WaveShape::oscillatory);
  CHECK(o.min_u() > 0.0);
  CHECK(alpha_crossings(o) >= 3);

  CHECK_THROWS_AS((void)monostable_profile(0.5, -0.1, step(1e-2)), NoWaveError);
  try {
    (void)monostable_profile(0.5, -0.1, step(1e-2));
  } catch (const NoWaveError& e) {
    CHECK_FALSE(e.classification().exists);
  }
}

TEST_CASE("pushed profiles") {
  const auto p = pushed_profile(0.5, 2.0, step(1e-2));
  structural(p);
  CHECK(p.shape == WaveShape::monotone);
  CHECK(p.max_u() <= 0.5 + 1e-9);

  const auto s = pushed_profile(0.5, 1.4145, step(1e-2));
  CHECK(s.shape == WaveShape::single_maximum);
  CHECK(s.max_u() > 0.5);

  CHECK_THROWS_AS((void)pushed_profile(0.5, 0.3, step(1e-2)), NoWaveError);
}

TEST_CASE("stationary profiles") {
  // E(u1, 0) = E(0, 0) reduces to u^2/3 - (1 + alpha) u/2 + alpha = 0.
  const double a = 0.25;
  const double b = 0.5 * (1.0 + a);
  const double root = 1.5 * (b - std::sqrt(b * b - 4.0 * a / 3.0));
  CHECK(root == doctest::Approx(0.5785).epsilon(1e-3));
  CHECK(bump_max(a) == doctest::Approx(root).epsilon(1e-12));

  const auto bump = stationary_profile(a, {StationaryKind::bump}, step(1e-3));
  structural(bump);
  CHECK(bump.max_u() == doctest::Approx(root).epsilon(1e-6));
  CHECK(bump.max_u() > a);
  CHECK(bump.max_u() < 1.0);
  REQUIRE(bump.free_boundaries.size() == 2);
  CHECK(bump.free_boundaries[0] == doctest::Approx(-bump.free_boundaries[1]));

  const auto dip = stationary_profile(0.5, {StationaryKind::dip}, step(1e-3));
  CHECK(std::abs(dip.min_u() - 0.25) <= 1e-6);
  CHECK(dip.limits == std::pair{Limit::one, Limit::one});

  const auto g = stationary_profile(1.0 / 3.0, {StationaryKind::glued, 10.0}, step(1e-2));
  structural(g);
  REQUIRE(g.free_boundaries.size() == 2);
  CHECK(g.free_boundaries[1] - g.free_boundaries[0] == doctest::Approx(10.0));
  CHECK(zero_on(g, {g.free_boundaries[0], g.free_boundaries[1]}));
  CHECK_THROWS_AS((void)stationary_profile(0.3, {StationaryKind::glued, 10.0}, step(1e-2)), PreconditionError);

  const auto per = stationary_profile(0.6, {StationaryKind::periodic, 0.0, 0.5}, step(1e-2));
  CHECK(per.min_u() == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(per.max_u() == doctest::Approx(conjugate_turning_point(0.6, 0.5)).epsilon(1e-4));
  CHECK_THROWS_AS((void)stationary_profile(0.6, {StationaryKind::periodic, 0.0, 0.1}, step(1e-2)), PreconditionError);
}

TEST_CASE("orbit period") {
  CHECK(orbit_period(0.75, 0.75 - 1e-4) == doctest::Approx(2.0 * std::numbers::pi / std::sqrt(0.25)).epsilon(1e-2 / 12.566));
  for (double alpha : {0.5, 0.75}) {
    const double lo = homoclinic_turning_point(alpha);
    double prev = 1e9;
    for (int k = 1; k <= 5; ++k) {
      const double u0 = lo + (alpha - lo) * k / 6.0;
      const double q = orbit_period(alpha, u0);
      CHECK(std::abs(q - orbit_period_loop(alpha, u0)) <= 1e-6);
      CHECK(q < prev);
      prev = q;
    }
  }
}

TEST_CASE("reflect and interpolate") {
  const auto p = bistable_profile(0.5, step(1e-2));
  const auto r = reflect(p);
  CHECK(r.speed == -p.speed);
  CHECK(r.limits.first == p.limits.second);
  CHECK(r.limits.second == p.limits.first);
  CHECK(reflect(r) == p);
  CHECK(interpolate(p, p.xi.front() - 100.0) == p.u.front());
  CHECK(interpolate(p, p.xi.back() + 100.0) == p.u.back());
  CHECK(interpolate(r, -p.xi[37]) == doctest::Approx(p.u[37]));
}

TEST_CASE("residual") {
  WaveProfile z;
  z.alpha = 0.4;
  z.grid_step = 0.1;
  for (int i = 0; i < 20; ++i) {
    z.xi.push_back(0.1 * i);
    z.u.push_back(0.0);
  }
  CHECK(residual(z) == 0.0);
  z.u.assign(z.u.size(), 0.4);
  CHECK(residual(z) == doctest::Approx(0.0));
  z.u.resize(4);
  z.xi.resize(4);
  CHECK_THROWS_AS((void)residual(z), PreconditionError);
}

TEST_CASE("residual is second order") {
  const auto ratio = [](auto make) { return residual(make(0.02)) / residual(make(0.01)); };
  CHECK(ratio([](double h) { return bistable_profile(0.3, step(h)); }) == doctest::Approx(4.0).epsilon(0.125));
  CHECK(ratio([](double h) { return monostable_profile(0.5, 1.3, step(h)); }) == doctest::Approx(4.0).epsilon(0.125));
  CHECK(ratio([](double h) { return pushed_profile(0.5, 1.6, step(h)); }) == doctest::Approx(4.0).epsilon(0.125));
  CHECK(ratio([](double h) { return stationary_profile(0.25, {StationaryKind::bump}, step(h)); }) ==
        doctest::Approx(4.0).epsilon(0.125));
  CHECK(ratio([](double h) { return stationary_profile(0.5, {StationaryKind::dip}, step(h)); }) ==
        doctest::Approx(4.0).epsilon(0.125));
}
