// Serial reference vs OpenMP kernel for the per-robot sense/decide stage, and the
// full tick built on each.
#include <benchmark/benchmark.h>

#include "swarm/engine.hpp"

namespace {

swarm::WorldConfig bench_config(int n, swarm::ModelKind model) {
    swarm::WorldConfig cfg;
    cfg.n_robots = n;
    cfg.model = model;
    cfg.seed = 42;
    cfg.init_side = n > 60 ? 1.0 : 0.5;
    return cfg;
}

void run_tick(benchmark::State& state, swarm::ExecPolicy policy) {
    const auto n = static_cast<int>(state.range(0));
    swarm::World world(bench_config(n, swarm::ModelKind::AAPGV));
    for (auto _ : state) {
        world.step(policy);
        benchmark::DoNotOptimize(world.robots().data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}

void run_decide(benchmark::State& state, swarm::ExecPolicy policy) {
    const auto n = static_cast<int>(state.range(0));
    const auto cfg = bench_config(n, swarm::ModelKind::AAV);
    swarm::World world(cfg);
    const auto snapshot = world.bodies();
    std::vector<swarm::Controller> controllers = world.controllers();
    std::vector<swarm::Decision> out(controllers.size());
    const swarm::SensorConfig sensor{cfg.params.r_sense, cfg.body.height, cfg.occlusion};
    std::int64_t tick = 0;
    for (auto _ : state) {
        swarm::decide(policy, snapshot, controllers, sensor, {}, tick++, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}

void BM_TickSerial(benchmark::State& s) { run_tick(s, swarm::ExecPolicy::Serial); }
void BM_TickParallel(benchmark::State& s) { run_tick(s, swarm::ExecPolicy::Parallel); }
void BM_DecideSerial(benchmark::State& s) { run_decide(s, swarm::ExecPolicy::Serial); }
void BM_DecideParallel(benchmark::State& s) { run_decide(s, swarm::ExecPolicy::Parallel); }

}  // namespace

BENCHMARK(BM_TickSerial)->Arg(25)->Arg(40)->Arg(60)->Arg(120);
BENCHMARK(BM_TickParallel)->Arg(25)->Arg(40)->Arg(60)->Arg(120);
BENCHMARK(BM_DecideSerial)->Arg(40)->Arg(120);
BENCHMARK(BM_DecideParallel)->Arg(40)->Arg(120);

BENCHMARK_MAIN();
