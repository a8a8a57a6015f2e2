#include <doctest.h>

#include <cmath>

#include "fbrd/pde.hpp"
#include "fbrd/shooting.hpp"

using namespace fbrd;

namespace {

std::vector<double> every(double dt, double T) {
  std::vector<double> out;
  for (int k = 1; k * dt <= T + 1e-12; ++k) out.push_back(k * dt);
  return out;
}

double front_speed(double dx) {
  const auto g = Grid1D::make(-60.0, 60.0, dx);
  RunOptions o;
  o.track_levels = {0.5};
  return run(initial_state(TanhFront{}, g), 0.3, 120.0, every(1.0, 120.0), o).tracks.front().fitted_speed;
}

}  // namespace

TEST_CASE("grid") {
  const auto g = Grid1D::make(-1.0, 1.0, 0.1);
  CHECK(g.n == 21);
  CHECK(g.x(20) == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)Grid1D::make(0.0, 1.05, 0.1), PreconditionError);
  CHECK_THROWS_AS((void)Grid1D::make(0.0, 1.0, 0.1), PreconditionError);
}

TEST_CASE("initial data") {
  const auto g = Grid1D::make(-5.0, 5.0, 0.1);
  for (double v : initial_values(ConstantDatum{0.0}, g)) CHECK(v == 0.0);
  const auto t = initial_values(TanhFront{}, g);
  CHECK(t[50] == doctest::Approx(0.5));
  CHECK(t.front() > t.back());
  const auto d = initial_values(SechDip{1.0, 0.7, 0.5, 0.0}, g);
  CHECK(d[50] == doctest::Approx(0.3));
  const auto clipped = initial_values(ConstantDatum{-1.0}, g);
  CHECK(clipped[3] == 0.0);
  CHECK(datum_kind(TableDatum{}) == "table");
}

TEST_CASE("single steps") {
  const auto g = Grid1D::make(-2.0, 2.0, 0.1);
  auto zero = initial_state(ConstantDatum{0.0}, g);
  step(zero, 0.5, 0.004);
  for (double v : zero.values) CHECK(v == 0.0);

  auto one = initial_state(ConstantDatum{1.0}, g);
  step(one, 0.5, 0.004);
  for (double v : one.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));

  auto q = initial_state(ConstantDatum{0.25}, g);
  step(q, 0.5, 0.001);
  for (double v : q.values) CHECK(v == doctest::Approx(0.25 + 0.001 * (0.25 - 0.5) * (1.0 - 0.25)).epsilon(1e-14));
  CHECK(q.values[0] == doctest::Approx(0.2498125));
  CHECK_THROWS_AS(step(q, 0.5, 0.1), PreconditionError);
}

TEST_CASE("uniform extinction") {
  const double oracle = 2.0 * std::log(1.5);
  CHECK(uniform_extinction_time(0.5, 0.25).value() == doctest::Approx(oracle));
  CHECK_FALSE(uniform_extinction_time(0.5, 0.75).has_value());
  CHECK(bistable_ode_solution(0.5, 0.5, 7.0) == doctest::Approx(0.5));
  CHECK(std::abs(bistable_ode_solution(0.5, 0.25, oracle)) < 1e-9);
  CHECK(bistable_ode_solution(0.5, 0.75, 200.0) == doctest::Approx(1.0));

  const auto g = Grid1D::make(-2.0, 2.0, 0.1);
  const auto r = run(initial_state(ConstantDatum{0.25}, g), 0.5, 2.0, every(0.005, 2.0));
  REQUIRE(r.extinction_time);
  CHECK(std::abs(*r.extinction_time - oracle) <= r.dt + 0.01);
  // Away from extinction the scheme tracks the ODE.
  CHECK(r.snapshots[39].values[20] == doctest::Approx(bistable_ode_solution(0.5, 0.25, r.probe_times[39])).epsilon(1e-3));

  const auto ones = run(initial_state(ConstantDatum{1.0}, g), 0.5, 1.0, every(0.5, 1.0));
  CHECK_FALSE(ones.extinction_time);
}

TEST_CASE("run invariants") {
  const auto g = Grid1D::make(-30.0, 30.0, 0.1);
  const auto r = run(initial_state(ExpDip{0.9, 0.7, 0.5, 0.0}, g), 0.4, 10.0, every(0.5, 10.0));
  CHECK(r.min_value >= 0.0);
  for (std::size_t i = 1; i < r.clamped_mass.size(); ++i) CHECK(r.clamped_mass[i] >= r.clamped_mass[i - 1]);
  for (std::size_t k = 0; k < r.probe_times.size(); ++k) CHECK(r.snapshots[k].time == doctest::Approx(r.probe_times[k]));

  // Positive and above alpha everywhere: nothing to clamp.
  const auto smooth = run(initial_state(ExpDip{0.9, 0.3, 0.5, 0.0}, g), 0.4, 5.0, every(1.0, 5.0));
  CHECK(smooth.clamped_mass.back() == 0.0);
}

TEST_CASE("front tracking") {
  const auto g = Grid1D::make(-2.0, 2.0, 0.1);
  const auto flat = run(initial_state(ConstantDatum{0.7}, g), 0.5, 0.1, {0.05, 0.1});
  CHECK_THROWS_AS((void)front_track(flat, 0.5), NumericalError);

  const double c = bistable_speed(0.3).value;
  const double s1 = front_speed(0.2);
  const double s2 = front_speed(0.1);
  const double s3 = front_speed(0.05);
  // Successive refinements shrink and approach the shooting speed.
  CHECK(std::abs(s3 - s2) <= std::abs(s2 - s1));
  CHECK(std::abs(s3 - c) <= std::abs(s1 - c));
  CHECK(std::abs(s3 - c) <= 0.005);
}

TEST_CASE("support intervals") {
  const auto g = Grid1D::make(-20.0, 20.0, 0.1);
  CHECK(support_intervals(initial_state(ConstantDatum{0.0}, g)).empty());

  TableDatum two;
  two.x = {-20, -8, -6, -4, 4, 6, 8, 20};
  two.u = {0, 0, 0.5, 0, 0, 0.5, 0, 0};
  const auto iv = support_intervals(initial_state(two, g));
  REQUIRE(iv.size() == 2);
  CHECK(iv[0].lo == doctest::Approx(-8.0));
  CHECK(iv[1].hi == doctest::Approx(8.0));

  ProfileOptions o;
  o.step = 0.01;
  const auto bump = stationary_profile(0.25, {StationaryKind::bump}, o);
  const auto b = support_intervals(initial_state(ProfileDatum{bump, 0.0, 1.0}, g));
  REQUIRE(b.size() == 1);
  CHECK(std::abs(b[0].lo - bump.free_boundaries[0]) <= g.dx);
  CHECK(std::abs(b[0].hi - bump.free_boundaries[1]) <= g.dx);
}

TEST_CASE("bump below threshold dies out") {
  ProfileOptions o;
  o.step = 0.01;
  const auto bump = stationary_profile(0.25, {StationaryKind::bump}, o);
  const auto g = Grid1D::make(-40.0, 40.0, 0.1);
  const auto r = run(initial_state(ProfileDatum{bump, 0.0, 0.95}, g), 0.25, 30.0, every(1.0, 30.0));
  CHECK(r.extinction_time.has_value());
}

TEST_CASE("comparison") {
  const auto g = Grid1D::make(-5.0, 5.0, 0.1);
  const auto probes = every(0.05, 1.0);
  const auto a = run(initial_state(ConstantDatum{0.2}, g), 0.5, 1.0, probes);
  const auto b = run(initial_state(ConstantDatum{0.25}, g), 0.5, 1.0, probes);
  CHECK(comparison_check(a, a).max_violation == 0.0);
  CHECK(comparison_check(a, b).pass);
  CHECK_THROWS_AS((void)comparison_check(b, a), PreconditionError);
  REQUIRE(a.extinction_time);
  REQUIRE(b.extinction_time);
  CHECK(*a.extinction_time <= *b.extinction_time);

  const auto c = run(initial_state(ConstantDatum{0.2}, g), 0.4, 1.0, probes);
  CHECK_THROWS_AS((void)comparison_check(a, c), PreconditionError);
}

TEST_CASE("domain margin") {
  CHECK(domain_margin(0.5, 100.0) == doctest::Approx(290.0));
  CHECK(domain_margin(-0.5, 100.0) == doctest::Approx(290.0));
}
