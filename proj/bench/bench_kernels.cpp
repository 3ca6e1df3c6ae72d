// Serial reference kernels against their OpenMP counterparts. Parallel cases
// take the worker count as the benchmark argument.

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "busfactor/generators.hpp"
#include "busfactor/optimize.hpp"
#include "busfactor/robustness.hpp"

using namespace busfactor;

namespace {

const ProjectGraph& desk_graph() {
    static const ProjectGraph g = generate_powerlaw(GeneratorConfig{});
    return g;
}

ProjectGraph small_graph(std::size_t people, std::size_t tasks) {
    GeneratorConfig c;
    c.n_people = people;
    c.n_tasks = tasks;
    c.seed = 5;
    return generate_powerlaw(c);
}

const ProjectGraph& silo_graph() {
    static const ProjectGraph g = [] {
        GeneratorConfig block;
        block.n_people = 50;
        block.n_tasks = 67;
        block.seed = 1;
        return generate_silos(block, 2);
    }();
    return g;
}

std::vector<PersonId> shuffled_people(const ProjectGraph& g) {
    std::vector<PersonId> order(g.people().begin(), g.people().end());
    std::mt19937_64 rng(9);
    std::shuffle(order.begin(), order.end(), rng);
    return order;
}

void BM_DecayCurve(benchmark::State& state) {
    const auto& g = desk_graph();
    const auto order = shuffled_people(g);
    for (auto _ : state) benchmark::DoNotOptimize(decay_curve(g, order));
}

void BM_DecayCurveNaive(benchmark::State& state) {
    const auto& g = desk_graph();
    const auto order = shuffled_people(g);
    for (auto _ : state) benchmark::DoNotOptimize(decay_curve_naive(g, order));
}

void BM_ExactSerial(benchmark::State& state) {
    const auto g = small_graph(8, 12);
    for (auto _ : state) benchmark::DoNotOptimize(bus_factor_exact_serial(g));
}

void BM_ExactParallel(benchmark::State& state) {
    const auto g = small_graph(8, 12);
    for (auto _ : state) benchmark::DoNotOptimize(bus_factor_exact(g, int(state.range(0))));
}

NullModelConfig null_config() {
    NullModelConfig c;
    c.n_samples = 16;
    c.seed = 3;
    return c;
}

void BM_PermutationSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(permutation_test_serial(desk_graph(), null_config()));
}

void BM_PermutationParallel(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(permutation_test(desk_graph(), null_config(), int(state.range(0))));
}

SweepSpec sweep_spec() {
    SweepSpec s;
    s.kind = PerturbationKind::Densify;
    s.batch_size = 100;
    s.n_batches = 20;
    s.seed = 1;
    return s;
}

void BM_SweepSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep_serial(desk_graph(), sweep_spec(), Delta{1, 2}));
}

void BM_SweepParallel(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(run_sweep(desk_graph(), sweep_spec(), Delta{1, 2}, int(state.range(0))));
}

AnnealingConfig anneal_config() {
    AnnealingConfig c;
    c.restarts = 4;
    c.seed = 1;
    return c;
}

void BM_AnnealRestartsSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(anneal(silo_graph(), anneal_config(), 1));
}

void BM_AnnealRestartsParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(anneal(silo_graph(), anneal_config(), int(state.range(0))));
}

}  // namespace

BENCHMARK(BM_DecayCurve)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DecayCurveNaive)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PermutationSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PermutationParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AnnealRestartsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnnealRestartsParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
