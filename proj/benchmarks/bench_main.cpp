#include <benchmark/benchmark.h>

#include "fbrd/integrator.hpp"
#include "fbrd/pde.hpp"
#include "fbrd/profiles.hpp"
#include "fbrd/shooting.hpp"

namespace {

void BM_Integrate(benchmark::State& st) {
  const fbrd::ModelParams p(0.4, 0.5);
  const fbrd::EventSpec ev[] = {fbrd::EventSpec::near(0.4, 0.0, 1e-8)};
  for (auto _ : st) benchmark::DoNotOptimize(fbrd::integrate({0.0, 0.9, -0.05}, p, fbrd::Direction::forward, ev));
}
BENCHMARK(BM_Integrate);

void BM_Endpoint(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(fbrd::endpoint(0.3, 0.05, fbrd::Branch::minus));
}
BENCHMARK(BM_Endpoint);

void BM_BistableSpeed(benchmark::State& st) {
  const double alpha = static_cast<double>(st.range(0)) / 100.0;
  for (auto _ : st) benchmark::DoNotOptimize(fbrd::bistable_speed(alpha));
}
BENCHMARK(BM_BistableSpeed)->Arg(20)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_MonotoneMinSpeed(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(fbrd::monotone_min_speed(0.5));
}
BENCHMARK(BM_MonotoneMinSpeed)->Unit(benchmark::kMillisecond);

void BM_BumpProfile(benchmark::State& st) {
  fbrd::ProfileOptions o;
  o.step = 1e-3;
  for (auto _ : st) benchmark::DoNotOptimize(fbrd::stationary_profile(0.25, {fbrd::StationaryKind::bump}, o));
}
BENCHMARK(BM_BumpProfile)->Unit(benchmark::kMillisecond);

void BM_PdeStep(benchmark::State& st) {
  const auto g = fbrd::Grid1D::make(-150.0, 150.0, 0.1);
  auto s = fbrd::initial_state(fbrd::TanhFront{}, g);
  const double dt = fbrd::kDtFactor * g.dx * g.dx;
  for (auto _ : st) fbrd::step(s, 0.3, dt);
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(g.n));
}
BENCHMARK(BM_PdeStep);

}  // namespace

BENCHMARK_MAIN();
