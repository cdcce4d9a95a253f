// Parallel kernels vs their serial reference implementations. Both paths are
// bit-identical by contract (the unit and acceptance suites assert it); these
// benchmarks report what the OpenMP split actually buys at representative sizes.
//
//   ./bench_kernels                     # all benchmarks
//   ./bench_kernels --benchmark_filter=Warm

#include <benchmark/benchmark.h>

#include <vector>

#include "mmlink/allocation.hpp"
#include "mmlink/config.hpp"
#include "mmlink/ici.hpp"
#include "mmlink/mcsim.hpp"

using namespace mmlink;

namespace {

SystemConfig desk_config() {
    SystemConfig c = baseline_config();
    c.n_antennas = 64;
    return validate_config(c);
}

void BM_LeakageWarmSerial(benchmark::State& state) {
    const SystemConfig cfg = with_v_max(baseline_config(), 25.0);
    for (auto _ : state) {
        LeakageTable table(cfg);
        table.warm(false);
        benchmark::DoNotOptimize(table.at(0, state.range(0) - 1));
    }
    state.SetLabel("keys=" + std::to_string(state.range(0)));
}

void BM_LeakageWarmParallel(benchmark::State& state) {
    const SystemConfig cfg = with_v_max(baseline_config(), 25.0);
    for (auto _ : state) {
        LeakageTable table(cfg);
        table.warm(true);
        benchmark::DoNotOptimize(table.at(0, state.range(0) - 1));
    }
    state.SetLabel("keys=" + std::to_string(state.range(0)));
}

void BM_MeasureManySerial(benchmark::State& state) {
    const SystemConfig cfg = desk_config();
    const AllocationPlan plan = build_allocation(cfg);
    const std::vector<int> indices = {1, 5, 10};
    for (auto _ : state) {
        const auto rs = measure_many(state.range(0), indices, Combiner::kZf, cfg, plan,
                                     2026, /*parallel=*/false);
        benchmark::DoNotOptimize(rs.front().empirical_sinr);
    }
    state.SetLabel("trials=" + std::to_string(state.range(0)));
}

void BM_MeasureManyParallel(benchmark::State& state) {
    const SystemConfig cfg = desk_config();
    const AllocationPlan plan = build_allocation(cfg);
    const std::vector<int> indices = {1, 5, 10};
    for (auto _ : state) {
        const auto rs = measure_many(state.range(0), indices, Combiner::kZf, cfg, plan,
                                     2026, /*parallel=*/true);
        benchmark::DoNotOptimize(rs.front().empirical_sinr);
    }
    state.SetLabel("trials=" + std::to_string(state.range(0)));
}

}  // namespace

BENCHMARK(BM_LeakageWarmSerial)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LeakageWarmParallel)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeasureManySerial)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeasureManyParallel)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
