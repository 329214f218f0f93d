#include <benchmark/benchmark.h>

#include "srg/ode.hpp"
#include "srg/process.hpp"
#include "srg/theory.hpp"

using namespace srg;

namespace {

ProcessParams params_for(std::uint32_t n, double p, Model model, Sampler sampler) {
    ProcessParams params;
    params.n_vertices = n;
    params.gluing_p = p;
    params.model = model;
    params.sampler = sampler;
    params.seed = 12345;
    params.stop = model == Model::Simple ? StopCondition::at_jam() : StopCondition::at_time(1.0);
    return params;
}

}  // namespace

static void BM_classical_to_t1(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) {
        GraphState g(params_for(n, 1.0, Model::Classical, Sampler::Naive));
        benchmark::DoNotOptimize(g.run_to_time(1.0).total_edges);
    }
    state.SetItemsProcessed(state.iterations() * (n / 2));  // ~tN/2 attempts
}
BENCHMARK(BM_classical_to_t1)->Arg(1 << 14)->Arg(1 << 17)->Unit(benchmark::kMillisecond);

static void BM_event_driven_to_jam(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) {
        GraphState g(params_for(n, 0.5, Model::Simple, Sampler::EventDriven));
        benchmark::DoNotOptimize(g.run_to_jam().u_jam);
    }
    state.SetItemsProcessed(state.iterations() * n);  // exactly N successes per run
}
BENCHMARK(BM_event_driven_to_jam)->Arg(1 << 14)->Arg(1 << 17)->Unit(benchmark::kMillisecond);

static void BM_naive_to_jam(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) {
        GraphState g(params_for(n, 0.5, Model::Simple, Sampler::Naive));
        benchmark::DoNotOptimize(g.run_to_jam().attempts_total);
    }
}
BENCHMARK(BM_naive_to_jam)->Arg(1 << 12)->Arg(1 << 14)->Unit(benchmark::kMillisecond);

static void BM_snapshot(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    GraphState g(params_for(n, 1.0, Model::Classical, Sampler::Naive));
    g.run_to_time(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(g.snapshot().largest_component);
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_snapshot)->Arg(1 << 17)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

static void BM_order_parameter(benchmark::State& state) {
    double t = 1.2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(theory::order_parameter(t, 0.5));
        t = t < 8.0 ? t + 0.1 : 1.2;  // spread over the supercritical range
    }
}
BENCHMARK(BM_order_parameter);

static void BM_tree_hierarchy(benchmark::State& state) {
    oracle::TreeOdeConfig cfg;
    cfg.model = Model::Classical;
    cfg.kmax = static_cast<unsigned>(state.range(0));
    cfg.dt = 1e-3;
    for (auto _ : state) benchmark::DoNotOptimize(oracle::integrate_trees(cfg, 0.1).mass);
    state.SetItemsProcessed(state.iterations() * 100 * cfg.kmax * cfg.kmax / 2);
}
BENCHMARK(BM_tree_hierarchy)->Arg(128)->Arg(400)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
