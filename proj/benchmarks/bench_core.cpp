#include <benchmark/benchmark.h>

#include "recur/maps.hpp"
#include "recur/measure.hpp"
#include "recur/recurrence.hpp"
#include "recur/schedule.hpp"

namespace {

void BM_BitstreamStep(benchmark::State& state) {
    recur::BitstreamOrbit orbit(1, 0, 1 << 20);
    std::uint64_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(orbit.point_at(k));
        k = (k + 1) & ((1 << 20) - 1);
    }
}
BENCHMARK(BM_BitstreamStep);

void BM_Float64GaussStep(benchmark::State& state) {
    recur::Float64Orbit orbit(recur::IntervalMap::gauss(), 0.3141592653);
    for (auto _ : state) benchmark::DoNotOptimize(orbit.next());
}
BENCHMARK(BM_Float64GaussStep);

void BM_RadiusForMassGauss(benchmark::State& state) {
    const auto mu = recur::InvariantMeasure::gauss_measure();
    double m = 0.001;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mu.radius_for_mass(0.37, m));
        m = m < 0.9 ? m * 1.1 : 0.001;
    }
}
BENCHMARK(BM_RadiusForMassGauss);

void BM_RecurrencePass(benchmark::State& state) {
    const auto mu = recur::InvariantMeasure::lebesgue();
    const auto sched = recur::MassSchedule::log_power(5.0);
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        recur::BitstreamOrbitStream orbit{recur::BitstreamOrbit(1, 0, n)};
        benchmark::DoNotOptimize(recur::run_recurrence(mu, sched, orbit, n, {n}));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_RecurrencePass)->Arg(1 << 14)->Arg(1 << 17);

void BM_UlamBuild(benchmark::State& state) {
    const auto map = recur::IntervalMap::gauss();
    const auto bins = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(recur::ulam_measure(map, bins));
}
BENCHMARK(BM_UlamBuild)->Arg(128)->Arg(512);

} // namespace

BENCHMARK_MAIN();
