#include <doctest.h>

#include <cmath>
#include <complex>

#include "fbrd/integrator.hpp"
#include "fbrd/model.hpp"

using namespace fbrd;

namespace {

// Composite Simpson rule, independent of the closed-form potential.
double simpson(double a, double b, int n, auto f) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("reaction") {
  CHECK(reaction(0.0, 0.5) == 0.0);
  CHECK(reaction(-0.3, 0.5) == 0.0);
  CHECK(reaction(1.0, 0.5) == 0.0);
  CHECK(reaction(0.5, 0.25) == doctest::Approx((0.5 - 0.25) * (1.0 - 0.5)));
  CHECK(reaction(1e-300, 0.5) < 0.0);
}

TEST_CASE("vector field") {
  for (double c : {-1.0, 0.0, 2.0}) {
    const auto a = vector_field({0.0, 0.3, 0.0}, ModelParams(0.3, c), true);
    CHECK(a.du == 0.0);
    CHECK(a.dw == doctest::Approx(0.0));
    const auto b = vector_field({0.0, 1.0, 0.0}, ModelParams(0.3, c), true);
    CHECK(b.dw == doctest::Approx(0.0));
  }
  const auto d = vector_field({0.0, 0.0, 0.0}, ModelParams(0.5, 1.0), true);
  CHECK(d.du == 0.0);
  CHECK(d.dw == doctest::Approx(0.5));
  CHECK(vector_field({0.0, 0.0, 0.0}, ModelParams(0.5, 1.0), false).dw == 0.0);
  CHECK_THROWS_AS(ModelParams(1.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(ModelParams(0.0, 0.0), PreconditionError);
}

TEST_CASE("energy and potential") {
  CHECK(energy(1.0, 0.0, 0.4) == doctest::Approx(0.0));
  for (double a : {0.1, 1.0 / 3.0, 0.5, 0.9}) {
    CHECK(energy(homoclinic_turning_point(a), 0.0, a) == doctest::Approx(0.0).epsilon(1e-14));
  }
  const double q = simpson(0.0, 1.0, 200, [](double s) { return (s - 0.25) * (1.0 - s); });
  CHECK(energy(0.0, 0.0, 0.25) == doctest::Approx(-q).epsilon(1e-12));
  CHECK(energy(0.0, 0.0, 0.25) == doctest::Approx(-1.0 / 24.0).epsilon(1e-12));
  for (double u : {-0.4, 0.2, 0.7}) {
    const double ref = simpson(u, 1.0, 400, [](double s) { return (s - 0.6) * (1.0 - s); });
    CHECK(potential(u, 0.6) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("omega membership") {
  CHECK(in_omega(0.0, 0.0, 0.25));
  CHECK_FALSE(in_omega(0.0, 0.0, 0.5));
  for (double a : {0.2, 0.5, 0.8}) CHECK_FALSE(in_omega(1.0, 0.0, a));
  CHECK(in_omega(0.5, 0.0, 0.5));
}

TEST_CASE("eigen data") {
  const auto c0 = eigen(ModelParams(0.75, 0.0));
  CHECK_FALSE(c0.lambda_real);
  CHECK(c0.lambda_plus.real() == doctest::Approx(0.0));
  CHECK(std::abs(c0.lambda_plus.imag()) == doctest::Approx(0.5));
  CHECK(c0.Lambda_plus == doctest::Approx(0.5));
  CHECK(c0.Lambda_minus == doctest::Approx(-0.5));
  CHECK(c0.alpha_point == AlphaPointType::center);

  const auto c1 = eigen(ModelParams(0.75, 1.0));
  CHECK(c1.lambda_real);
  CHECK(c1.lambda_plus.real() == doctest::Approx(-0.5));
  CHECK(c1.lambda_minus.real() == doctest::Approx(-0.5));

  // Quadratic-formula oracle for lambda^2 + c lambda + (1 - alpha) = 0.
  const double c = 2.0;
  const double k = 0.5;
  const double disc = std::sqrt(c * c - 4.0 * k);
  const auto e = eigen(ModelParams(0.5, c));
  CHECK(e.lambda_plus.real() == doctest::Approx((-c + disc) / 2.0));
  CHECK(e.lambda_minus.real() == doctest::Approx((-c - disc) / 2.0));
  CHECK(e.lambda_plus.real() == doctest::Approx(-0.29289).epsilon(1e-4));
  CHECK(e.alpha_point == AlphaPointType::stable_node);
  CHECK(eigen(ModelParams(0.5, -1.0)).alpha_point == AlphaPointType::unstable_focus);
}

TEST_CASE("manifold seeds") {
  const auto s = manifold_seed(ModelParams(0.75, 0.0), ManifoldBranch::unstable_below, 1e-7);
  const double n = std::sqrt(1.0 + 0.25);
  CHECK(s.u == doctest::Approx(1.0 - 1e-7 / n).epsilon(1e-15));
  CHECK(s.w == doctest::Approx(-0.5e-7 / n).epsilon(1e-12));
  CHECK(1.0 - s.u == doctest::Approx(8.944e-8).epsilon(1e-3));

  for (double c : {-1.0, 0.0, 0.7}) {
    CHECK(manifold_seed(ModelParams(0.3, c), ManifoldBranch::stable_above, 1e-7).w > 0.0);
  }
  const auto h = manifold_seed(ModelParams(0.5, 0.0), ManifoldBranch::unstable_below, 1e-4);
  CHECK(std::abs(energy(h.u, h.w, 0.5)) < 1e-11);
  CHECK_THROWS_AS((void)manifold_seed(ModelParams(0.5, 0.0), ManifoldBranch::unstable_below, 0.5), PreconditionError);
}

TEST_CASE("integrate: equilibrium stays put") {
  IntegratorOptions o;
  o.max_span = 50.0;
  const EventSpec ev[] = {EventSpec::u_crosses(0.5)};
  const auto t = integrate({0.0, 0.3, 0.0}, ModelParams(0.3, 0.7), Direction::forward, ev, o);
  CHECK(t.termination == Termination::max_span);
  for (const auto& q : t.samples) {
    CHECK(q.u == doctest::Approx(0.3));
    CHECK(q.w == doctest::Approx(0.0));
  }
}

TEST_CASE("integrate: homoclinic turning point") {
  const ModelParams p(0.25, 0.0);
  const EventSpec ev[] = {EventSpec::w_crosses(0.0, Crossing::rising), EventSpec::leaves_box({})};
  const auto t = integrate(manifold_seed(p, ManifoldBranch::unstable_below), p, Direction::forward, ev);
  REQUIRE(t.fired(0));
  CHECK(t.back().u == doctest::Approx(-0.125).epsilon(1e-6));
}

TEST_CASE("integrate: pushed orbit from the origin") {
  const ModelParams p(0.5, 2.5);
  const EventSpec ev[] = {EventSpec::near(0.5, 0.0, 1e-8)};
  const auto t = integrate({0.0, 0.0, 0.0}, p, Direction::forward, ev);
  REQUIRE(t.fired(0));
  CHECK(t.converged_to == Equilibrium::alpha_point);
  for (std::size_t i = 1; i < t.samples.size(); ++i) {
    CHECK(t.samples[i].w > 0.0);
    CHECK(t.samples[i].u > 0.0);
    CHECK(t.samples[i].u < 0.5);
  }
}

TEST_CASE("integrate: level events are exact") {
  const ModelParams p(0.4, 0.3);
  for (double level : {0.9, 0.6, 0.45}) {
    const EventSpec ev[] = {EventSpec::u_crosses(level)};
    const auto t = integrate({0.0, 0.95, -0.05}, p, Direction::forward, ev);
    REQUIRE(t.fired(0));
    CHECK(std::abs(t.back().u - level) <= 1e-10);
  }
}

TEST_CASE("energy dissipation identity") {
  for (double c : {0.2, 1.0}) {
    const ModelParams p(0.3, c);
    const EventSpec ev[] = {EventSpec::xi_exceeds(15.0)};
    const auto t = integrate({0.0, 0.8, 0.1}, p, Direction::forward, ev);
    double integral = 0.0;
    for (std::size_t i = 1; i < t.samples.size(); ++i) {
      const auto& a = t.samples[i - 1];
      const auto& b = t.samples[i];
      integral += 0.5 * (b.xi - a.xi) * (a.w * a.w + b.w * b.w);
    }
    const double dE = energy(t.back().u, t.back().w, 0.3) - energy(0.8, 0.1, 0.3);
    CHECK(std::abs(dE + c * integral) <= 1e-6);
  }
}

TEST_CASE("sample_on_grid runs both ways") {
  const ModelParams p(0.6, 0.0);
  const auto fwd = sample_on_grid({0.0, 0.5, 0.02}, p, 0.0, 0.05, 201, {});
  const auto bwd = sample_on_grid(fwd.back(), p, fwd.back().xi, -0.05, 201, {});
  REQUIRE(fwd.size() == 201);
  REQUIRE(bwd.size() == 201);
  CHECK(bwd.back().u == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(bwd.back().w == doctest::Approx(0.02).epsilon(1e-8));
  CHECK(fwd[100].xi == doctest::Approx(5.0));
}
