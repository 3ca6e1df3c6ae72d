#include <gtest/gtest.h>

#include <random>

#include "busfactor/errors.hpp"
#include "busfactor/generators.hpp"
#include "busfactor/optimize.hpp"
#include "busfactor/report.hpp"
#include "oracles.hpp"

using namespace busfactor;

namespace {

NullModelConfig null_config(std::size_t n, std::uint64_t seed = 1) {
    NullModelConfig c;
    c.n_samples = n;
    c.seed = seed;
    return c;
}

AnnealingConfig quick_schedule(std::uint64_t seed = 1) {
    AnnealingConfig c;
    c.initial_temperature = 0.05;
    c.cooling_rate = 0.9;
    c.steps_per_temperature = 100;
    c.min_temperature = 1e-3;
    c.seed = seed;
    return c;
}

void expect_task_coverage_kept(const ProjectGraph& before, const ProjectGraph& after) {
    for (Index t = 0; t < before.task_count(); ++t)
        if (before.task_degree(t) >= 1) EXPECT_GE(after.task_degree(t), 1u);
}

}  // namespace

TEST(NullSample, CompleteGraphIsRigid) {
    auto k = oracle::complete(2, 2);
    auto s = null_sample(k, null_config(1), 0);
    EXPECT_EQ(s.graph, k);
    EXPECT_EQ(s.accepted_swaps, 0u);
    EXPECT_FALSE(s.too_few_edges);
}

TEST(NullSample, FourEdgeGraphHasOneSwap) {
    // Edge pairs of p1:{t1,t2}, p2:{t2,t3}: only (p1,t1),(p2,t3) can swap.
    auto g = oracle::four_edge();
    auto swapped = oracle::make({{1, 3}, {1, 2}, {2, 2}, {2, 1}});
    std::set<std::vector<Edge>> reached;
    for (std::size_t i = 0; i < 50; ++i) {
        auto s = null_sample(g, null_config(1), i).graph;
        EXPECT_EQ(oracle::person_degree_multiset(s), oracle::person_degree_multiset(g));
        EXPECT_EQ(oracle::task_degree_multiset(s), oracle::task_degree_multiset(g));
        reached.insert(s.edges());
    }
    EXPECT_EQ(reached, (std::set<std::vector<Edge>>{g.edges(), swapped.edges()}));
}

TEST(NullSample, TooFewEdges) {
    auto g = oracle::make({{1, 1}}, 1, 1);
    auto s = null_sample(g, null_config(1), 0);
    EXPECT_TRUE(s.too_few_edges);
    EXPECT_EQ(s.graph, g);
}

TEST(NullSample, PreservesDegreesPerNode) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = oracle::random_graph(rng, 3 + int(rng() % 15), 3 + int(rng() % 15), 0.3);
        for (std::size_t i = 0; i < 3; ++i) {
            auto s = null_sample(g, null_config(1, trial), i).graph;
            EXPECT_EQ(s.person_degrees(), g.person_degrees());
            EXPECT_EQ(s.task_degrees(), g.task_degrees());
            EXPECT_EQ(s, null_sample(g, null_config(1, trial), i).graph);
        }
    }
}

TEST(PermutationTest, PValueFormula) {
    std::vector<double> nulls{0.5, 0.6, 0.7};
    EXPECT_DOUBLE_EQ(lower_tail_p_value(0.1, nulls), 0.25);
    EXPECT_DOUBLE_EQ(lower_tail_p_value(0.6, nulls), 0.75);
    EXPECT_DOUBLE_EQ(lower_tail_p_value(0.9, nulls), 1.0);
    std::vector<double> many(99, 0.8);
    EXPECT_DOUBLE_EQ(lower_tail_p_value(0.2, many), 1.0 / 100.0);
}

TEST(PermutationTest, CompleteGraphGivesOne) {
    auto r = permutation_test(oracle::complete(2, 2), null_config(20));
    EXPECT_EQ(r.p_value, 1.0);
    EXPECT_EQ(r.null_values.size(), 20u);
    for (double v : r.null_values) EXPECT_EQ(v, r.observed);
}

TEST(PermutationTest, ParallelMatchesSerial) {
    GeneratorConfig c;
    c.n_people = 60;
    c.n_tasks = 80;
    auto g = generate_powerlaw(c);
    auto serial = permutation_test_serial(g, null_config(24, 5));
    for (int workers : {1, 4}) {
        auto parallel = permutation_test(g, null_config(24, 5), workers);
        EXPECT_EQ(parallel.observed, serial.observed);
        EXPECT_EQ(parallel.null_values, serial.null_values);
        EXPECT_EQ(parallel.p_value, serial.p_value);
    }
    EXPECT_GT(serial.p_value, 0.0);
    EXPECT_LE(serial.p_value, 1.0);
}

TEST(PermutationTest, CalibrationIsWorkerIndependent) {
    GeneratorConfig c;
    c.n_people = 40;
    c.n_tasks = 50;
    auto g = generate_powerlaw(c);
    auto a = calibrate_permutation_test(g, null_config(9, 3), 12, 1);
    auto b = calibrate_permutation_test(g, null_config(9, 3), 12, 3);
    EXPECT_EQ(a.p_values, b.p_values);
    EXPECT_EQ(a.ks_statistic, b.ks_statistic);
    ASSERT_EQ(a.p_values.size(), 12u);
    for (double p : a.p_values) {
        EXPECT_GT(p, 0.0);
        EXPECT_LE(p, 1.0);
    }
}

TEST(Anneal, TwoBlocksImprove) {
    auto g = oracle::two_blocks(3, 4);
    auto r = anneal(g, quick_schedule());
    ASSERT_TRUE(r.feasible);
    EXPECT_GT(r.best_objective, r.initial_objective);
    EXPECT_EQ(r.initial_objective, bus_factor_greedy(g).value);
    EXPECT_GT(bus_factor_greedy(r.graph).value, bus_factor_greedy(g).value);
    EXPECT_EQ(r.graph.person_degrees(), g.person_degrees());
    expect_task_coverage_kept(g, r.graph);
}

TEST(Anneal, CompleteGraphUnchanged) {
    auto k = oracle::complete(2, 2);
    auto r = anneal(k, quick_schedule());
    EXPECT_FALSE(r.feasible);
    EXPECT_TRUE(r.trace.empty());
    EXPECT_EQ(r.graph, k);
}

TEST(Anneal, Degenerate) {
    EXPECT_THROW(anneal(oracle::make({}, 2, 2), quick_schedule()), DegenerateError);
    EXPECT_THROW(anneal(oracle::star(1), quick_schedule()), DegenerateError);
    AnnealingConfig bad = quick_schedule();
    bad.cooling_rate = 1.0;
    EXPECT_THROW(anneal(oracle::four_edge(), bad), InvalidArgument);
}

TEST(Anneal, TraceInvariants) {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 12; ++trial) {
        auto g = oracle::random_graph(rng, 4 + int(rng() % 8), 4 + int(rng() % 10), 0.35);
        if (g.edge_count() < 1) continue;
        auto r = anneal(g, quick_schedule(trial));
        EXPECT_EQ(r.graph.person_degrees(), g.person_degrees());
        expect_task_coverage_kept(g, r.graph);
        EXPECT_GE(r.best_objective, r.initial_objective);
        EXPECT_EQ(r.best_objective, bus_factor_greedy(r.graph).value);
        if (!r.feasible) continue;
        ASSERT_FALSE(r.trace.empty());
        EXPECT_EQ(r.trace.front().step, 0u);
        for (std::size_t i = 1; i < r.trace.size(); ++i) {
            EXPECT_GE(r.trace[i].best, r.trace[i - 1].best);
            EXPECT_GT(r.trace[i].step, r.trace[i - 1].step);
            EXPECT_LE(r.trace[i].temperature, r.trace[i - 1].temperature);
        }
        EXPECT_EQ(r.trace.back().best, bus_factor_greedy(r.graph).value);
        EXPECT_EQ(r.trace.size(), r.accepted + 1);
    }
}

TEST(Anneal, ReproducibleAndRestartsIndependentOfWorkers) {
    auto g = oracle::two_blocks(3, 4);
    auto cfg = quick_schedule(7);
    auto a = anneal_chain(g, cfg, 7);
    auto b = anneal_chain(g, cfg, 7);
    EXPECT_EQ(a.graph, b.graph);
    EXPECT_EQ(a.accepted, b.accepted);

    cfg.restarts = 4;
    auto one = anneal(g, cfg, 1);
    auto four = anneal(g, cfg, 4);
    EXPECT_EQ(one.graph, four.graph);
    EXPECT_EQ(one.seed, four.seed);
    EXPECT_EQ(one.best_objective, four.best_objective);
    for (std::uint64_t s = 7; s < 11; ++s) EXPECT_GE(one.best_objective, anneal_chain(g, cfg, s).best_objective);
}

TEST(CompareDecay, Shapes) {
    auto g = oracle::two_blocks(3, 4);
    auto same = compare_decay(g, g);
    EXPECT_EQ(same.original, same.optimized);
    EXPECT_THROW(compare_decay(g, oracle::four_edge()), InvalidArgument);

    std::string csv = paired_decay_csv(same);
    std::istringstream in(csv);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.starts_with("#")) continue;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 2) << line;
        ++rows;
    }
    EXPECT_EQ(rows, g.person_count() + 2);  // header plus tau_0 .. tau_|P|
}

TEST(CompareDecay, AnnealedSilosDominatePointwise) {
    auto g = oracle::two_blocks(3, 4);
    auto r = anneal(g, quick_schedule(2));
    auto paired = compare_decay(g, r.graph);
    std::size_t at_least = 0;
    for (std::size_t i = 0; i < paired.original.size(); ++i) at_least += paired.optimized[i] >= paired.original[i];
    EXPECT_GE(double(at_least), 0.8 * double(paired.original.size()));
}
