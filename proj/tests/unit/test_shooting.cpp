#include <doctest.h>

#include <cmath>

#include "fbrd/shooting.hpp"

using namespace fbrd;

TEST_CASE("kpp speed") {
  CHECK(kpp_min_speed(0.5) == doctest::Approx(std::sqrt(2.0)));
  CHECK(kpp_min_speed(0.75) == doctest::Approx(1.0));
  CHECK(kpp_min_speed(1e-12) == doctest::Approx(2.0));
}

TEST_CASE("endpoints at the homoclinic level") {
  const auto m = endpoint(0.25, 0.0, Branch::minus);
  REQUIRE(m.has_crossing());
  CHECK(m.value == doctest::Approx(-0.125).epsilon(1e-6));
  const auto p = endpoint(0.5, 0.0, Branch::plus);
  REQUIRE(p.has_crossing());
  CHECK(p.value == doctest::Approx(0.25).epsilon(1e-6));
  const auto z = endpoint(0.3, 0.0792, Branch::minus);
  REQUIRE(z.has_crossing());
  CHECK(std::abs(z.value) < 1e-3);
  CHECK_THROWS_AS((void)endpoint(0.3, -0.1, Branch::minus), PreconditionError);
}

TEST_CASE("endpoint monotonicity in c") {
  for (double alpha : {0.2, 1.0 / 3.0, 0.5, 0.7}) {
    CAPTURE(alpha);
    const double cs = kpp_min_speed(alpha);
    double prev = -1e9;
    for (int k = 0; k < 10; ++k) {
      const auto e = endpoint(alpha, cs * k / 10.0, Branch::minus);
      if (!e.has_crossing()) continue;
      CHECK(e.value > prev);
      CHECK(e.value >= homoclinic_turning_point(alpha) - 1e-9);
      CHECK(e.value < alpha);
      prev = e.value;
    }
    prev = 1e9;
    for (int k = 0; k < 10; ++k) {
      const auto e = endpoint(alpha, 0.2 * k, Branch::plus);
      if (!e.has_crossing()) continue;
      CHECK(e.value < prev);
      prev = e.value;
    }
  }
}

TEST_CASE("bistable speed: values and sign structure") {
  CHECK(bistable_speed(0.3).value == doctest::Approx(0.0792).epsilon(0.002 / 0.0792));
  CHECK(bistable_speed(1.0 / 3.0).value == 0.0);
  CHECK(bistable_speed(0.5).value == doctest::Approx(-0.339).epsilon(0.005 / 0.339));
  for (double a : {0.1, 0.2, 0.3}) CHECK(bistable_speed(a).value > 0.0);
  for (double a : {0.4, 0.6, 0.8}) CHECK(bistable_speed(a).value < 0.0);
}

TEST_CASE("bisection certificates") {
  const double tol = 1e-8;
  for (double a : {0.15, 0.3, 0.45, 0.7}) {
    CAPTURE(a);
    const auto s = bistable_speed(a, tol);
    CHECK(s.method == SpeedMethod::bisection);
    CHECK(s.width() <= tol);
    CHECK(s.lo <= s.value);
    CHECK(s.value <= s.hi);
    CHECK(s.at_lo * s.at_hi <= 0.0);
    const auto m = monotone_min_speed(a, tol);
    if (!m.degenerate) {
      CHECK(m.width() <= tol);
      CHECK(m.at_lo * m.at_hi < 0.0);
    }
  }
}

TEST_CASE("pushed minimum speed") {
  CHECK(pushed_min_speed(0.25).value == 0.0);
  CHECK(pushed_min_speed(1.0 / 3.0).value == 0.0);
  CHECK(pushed_min_speed(0.5).value == doctest::Approx(0.339).epsilon(0.005 / 0.339));
}

TEST_CASE("monotone minimum speed") {
  const auto m = monotone_min_speed(0.5);
  CHECK(m.value > 1.4145);
  CHECK(m.value < 2.0);
  CHECK(std::abs(m.value - 1.472) <= 0.05);
  CHECK_FALSE(pushed_orbit_indicator(0.5, 1.4145).monotone);
  for (double a : {0.1, 0.5, 0.9}) CHECK(pushed_orbit_indicator(a, 2.0).monotone);
}

TEST_CASE("classification table") {
  using BC = BoundaryCondition;
  CHECK(classify(0.25, 2.0, BC::one_to_alpha).shape == WaveShape::monotone);
  CHECK_FALSE(classify(0.5, -0.1, BC::one_to_alpha).exists);
  CHECK(classify(0.5, 1.4145, BC::zero_to_alpha).shape == WaveShape::single_maximum);
  CHECK(classify(0.5, 1.5, BC::one_to_alpha).shape == WaveShape::monotone);
  CHECK(classify(0.5, 1.3, BC::one_to_alpha).shape == WaveShape::oscillatory);
  CHECK_FALSE(classify(0.5, 0.3, BC::zero_to_alpha).exists);

  const auto cb = bistable_speed(0.5);
  const auto one_zero = classify(0.5, cb.value, BC::one_to_zero);
  CHECK(one_zero.exists);
  CHECK(one_zero.free_boundary);
  CHECK_FALSE(classify(0.5, cb.value + 0.01, BC::one_to_zero).exists);

  const double tol = 1e-8;
  for (double a : {0.1, 0.2, 0.3}) {
    CAPTURE(a);
    CHECK(classify(a, bistable_speed(a, tol).value + 2.0 * tol, BC::one_to_alpha).exists);
  }
}

TEST_CASE("critical speeds bundle") {
  const auto s = critical_speeds(0.5);
  CHECK(s.c_kpp.value == doctest::Approx(std::sqrt(2.0)));
  CHECK(s.c_pushed_min.value == doctest::Approx(-s.c_bistable.value));
  CHECK(s.c_monotone_min.value >= s.c_kpp.value);
}
