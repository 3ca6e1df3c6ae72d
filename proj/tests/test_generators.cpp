#include <gtest/gtest.h>

#include <random>

#include "busfactor/coverage.hpp"
#include "busfactor/errors.hpp"
#include "busfactor/generators.hpp"
#include "busfactor/graph_io.hpp"
#include "busfactor/robustness.hpp"
#include "busfactor/stats.hpp"
#include "oracles.hpp"

using namespace busfactor;

namespace {

GeneratorConfig small_config(std::uint64_t seed = 42) {
    GeneratorConfig c;
    c.n_people = 100;
    c.n_tasks = 150;
    c.seed = seed;
    return c;
}

}  // namespace

TEST(GeneratePowerlaw, ShapeAndMinimumDegree) {
    auto g = generate_powerlaw(small_config());
    EXPECT_EQ(g.person_count(), 100u);
    EXPECT_EQ(g.task_count(), 150u);
    for (auto d : g.person_degrees()) EXPECT_GE(d, 1u);
    for (auto d : g.task_degrees()) EXPECT_GE(d, 1u);
}

TEST(GeneratePowerlaw, DeterministicPerSeed) {
    auto a = generate_powerlaw(small_config());
    auto b = generate_powerlaw(small_config());
    EXPECT_EQ(a, b);
    EXPECT_EQ(save_edge_list(a, EdgeListFormat::Csv), save_edge_list(b, EdgeListFormat::Csv));
    EXPECT_NE(a, generate_powerlaw(small_config(43)));
}

TEST(GeneratePowerlaw, HigherMinimumDegree) {
    auto c = small_config();
    c.min_degree = 3;
    auto g = generate_powerlaw(c);
    for (auto d : g.person_degrees()) EXPECT_GE(d, 3u);
    for (auto d : g.task_degrees()) EXPECT_GE(d, 3u);
}

TEST(GeneratePowerlaw, RejectsInvalidConfigs) {
    auto c = small_config();
    c.n_people = 0;
    EXPECT_THROW(generate_powerlaw(c), InvalidArgument);
    c = small_config();
    c.exponent_tasks = 1.0;
    EXPECT_THROW(generate_powerlaw(c), InvalidArgument);
    c = small_config();
    c.min_degree = 101;
    EXPECT_THROW(generate_powerlaw(c), InvalidArgument);
}

TEST(GeneratePowerlaw, FittedExponentInRangeAtDeskScale) {
    GeneratorConfig c;  // 750 x 1000, exponent 2.5, seed 42
    auto degrees = generate_powerlaw(c).person_degrees();
    // Bernoulli wiring spreads low targets over 0..3, so the lower cutoff is chosen
    // by KS distance rather than pinned at 1.
    auto fit = stats::fit_discrete_powerlaw_scan(degrees);
    EXPECT_GE(fit.exponent, 2.0);
    EXPECT_LE(fit.exponent, 3.0);
    EXPECT_GE(fit.tail_size, 100u);
}

TEST(PowerlawSampler, RecoversExponent) {
    Rng rng(5);
    auto draws = sample_truncated_powerlaw(20000, 2.5, 1, 100000, rng);
    for (auto d : draws) {
        EXPECT_GE(d, 1u);
        EXPECT_LE(d, 100000u);
    }
    EXPECT_NEAR(stats::fit_discrete_powerlaw(draws, 1), 2.5, 0.05);
}

TEST(Densify, CountsEdges) {
    auto g = oracle::make({}, 3, 3);
    auto cps = densify(g, 2, 2, 7);
    ASSERT_EQ(cps.graphs.size(), 2u);
    EXPECT_FALSE(cps.truncated);
    EXPECT_EQ(cps.graphs[0].edge_count(), 2u);
    EXPECT_EQ(cps.graphs[1].edge_count(), 4u);
}

TEST(Densify, SaturatedGraphIsTruncated) {
    auto cps = densify(oracle::complete(2, 2), 1, 3, 7);
    EXPECT_TRUE(cps.truncated);
    EXPECT_TRUE(cps.graphs.empty());
}

TEST(Sparsify, RemovesEverything) {
    auto cps = sparsify(oracle::four_edge(), 4, 1, 7);
    ASSERT_EQ(cps.graphs.size(), 1u);
    EXPECT_EQ(cps.graphs[0].edge_count(), 0u);
    EXPECT_FALSE(cps.truncated);
    EXPECT_TRUE(sparsify(oracle::four_edge(), 4, 2, 7).truncated);
}

TEST(DensifySparsify, BatchesKeepNodesAndChangeEdgeCountExactly) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = oracle::random_graph(rng, 5 + int(rng() % 20), 5 + int(rng() % 20), 0.3);
        std::size_t batch = 1 + rng() % 7;
        auto up = densify(g, batch, 6, trial);
        auto down = sparsify(g, batch, 6, trial);
        for (std::size_t i = 0; i < up.graphs.size(); ++i) {
            EXPECT_EQ(up.graphs[i].edge_count(), g.edge_count() + (i + 1) * batch);
            EXPECT_TRUE(std::ranges::equal(up.graphs[i].people(), g.people()));
            EXPECT_TRUE(std::ranges::equal(up.graphs[i].tasks(), g.tasks()));
            auto before = i == 0 ? g.edges() : up.graphs[i - 1].edges();
            auto after = up.graphs[i].edges();
            EXPECT_TRUE(std::includes(after.begin(), after.end(), before.begin(), before.end()));
        }
        for (std::size_t i = 0; i < down.graphs.size(); ++i) {
            EXPECT_EQ(down.graphs[i].edge_count() + (i + 1) * batch, g.edge_count());
            EXPECT_TRUE(std::ranges::equal(down.graphs[i].people(), g.people()));
        }
        EXPECT_EQ(up.truncated, up.graphs.size() < 6);
        EXPECT_EQ(down.truncated, down.graphs.size() < 6);
        // Seeded: identical reruns.
        EXPECT_EQ(densify(g, batch, 6, trial).graphs, up.graphs);
        EXPECT_EQ(sparsify(g, batch, 6, trial).graphs, down.graphs);
    }
}

TEST(Singletons, AddsDegreeOnePeopleOnDistinctTasks) {
    auto g = oracle::four_edge();
    auto h = add_singletons(g, 3, 1);
    EXPECT_EQ(h.person_count(), 5u);
    EXPECT_EQ(h.edge_count(), 7u);
    std::set<TaskId> used;
    for (PersonId p : {PersonId{3}, PersonId{4}, PersonId{5}}) {
        auto tasks = h.tasks_of(h.person_index(p));
        ASSERT_EQ(tasks.size(), 1u);
        used.insert(h.task_id(tasks[0]));
    }
    EXPECT_EQ(used.size(), 3u);
    EXPECT_EQ(add_singletons(g, 0, 1), g);
    EXPECT_THROW(add_singletons(g, 4, 1), InvalidArgument);
}

TEST(Singletons, PreExistingDegreesUnchanged) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = oracle::random_graph(rng, 6, 10, 0.3);
        auto h = add_singletons(g, 1 + rng() % 10, trial);
        for (Index p = 0; p < g.person_count(); ++p) EXPECT_EQ(h.person_degree(p), g.person_degree(p));
        for (Index p = Index(g.person_count()); p < h.person_count(); ++p) EXPECT_EQ(h.person_degree(p), 1u);
    }
}

TEST(Singletons, DirectionOnSmallGraph) {
    // Brute-force optima before and after on a graph with shared tasks.
    auto g = oracle::make({{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}, {3, 4}});
    auto h = add_singletons(g, 2, 3);
    auto before = oracle::subset_optima(g, 1, 2);
    auto after = oracle::subset_optima(h, 1, 2);
    EXPECT_GE(after.mcs, before.mcs);
    EXPECT_GE(after.mrs, before.mrs);
}

TEST(Duplicates, ClonesByDegree) {
    auto g = oracle::four_edge();
    auto one = add_duplicates(g, 1);
    EXPECT_FALSE(one.wrapped);
    ASSERT_EQ(one.graph.person_count(), 3u);
    std::vector<PersonId> p3{PersonId{3}};
    EXPECT_EQ(coverage(one.graph, p3), (std::vector<TaskId>{TaskId{1}, TaskId{2}}));

    auto two = add_duplicates(g, 2);
    for (Index t = 0; t < two.graph.task_count(); ++t) EXPECT_GE(two.graph.task_degree(t), 2u);
    EXPECT_FALSE(two.wrapped);

    auto three = add_duplicates(g, 3);
    EXPECT_TRUE(three.wrapped);
    EXPECT_EQ(three.graph.person_count(), 5u);
    EXPECT_EQ(add_duplicates(g, 0).graph, g);
}

TEST(Duplicates, PreserveOriginalAdjacency) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = oracle::random_graph(rng, 2 + int(rng() % 8), 4 + int(rng() % 8), 0.4);
        auto h = add_duplicates(g, 1 + rng() % 12).graph;
        for (Index p = 0; p < g.person_count(); ++p)
            EXPECT_TRUE(std::ranges::equal(h.tasks_of(p), g.tasks_of(p)));
        auto ranking = greedy_removal_order(g);
        for (Index c = Index(g.person_count()); c < h.person_count(); ++c) {
            Index source = ranking[(c - g.person_count()) % ranking.size()];
            EXPECT_TRUE(std::ranges::equal(h.tasks_of(c), g.tasks_of(source)));
        }
    }
}

TEST(Duplicates, RaiseRobustnessOnTwoSilos) {
    // Two silos bridged by p1, the top-degree person.
    auto g = oracle::make({{1, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 1}, {2, 2}, {3, 3}, {3, 4}});
    auto h = add_duplicates(g, 1).graph;
    ASSERT_GT(oracle::robustness(h, {PersonId{1}, PersonId{4}, PersonId{2}, PersonId{3}}),
              oracle::robustness(g, {PersonId{1}, PersonId{2}, PersonId{3}}));
    EXPECT_GT(bus_factor_greedy(h).value, bus_factor_greedy(g).value);
}

TEST(Sweep, RowsAndStride) {
    GeneratorConfig c = small_config();
    auto g = generate_powerlaw(c);
    SweepSpec spec{PerturbationKind::Densify, 50, 6, 9, 2};
    auto table = run_sweep(g, spec, Delta(1, 2));
    ASSERT_EQ(table.rows.size(), 4u);
    EXPECT_EQ(table.rows[0].modifications, 0u);
    EXPECT_EQ(table.rows[1].modifications, 100u);
    EXPECT_EQ(table.rows[3].modifications, 300u);
    EXPECT_FALSE(table.truncated);
    auto base = bus_factor_greedy(g).value;
    EXPECT_EQ(table.rows[0].robustness, base);
    EXPECT_EQ(table.rows[0].mcs, mcs_greedy(g, Delta(1, 2)).size());
}

TEST(Sweep, ParallelMatchesSerialBitForBit) {
    auto g = generate_powerlaw(small_config(3));
    for (auto kind : {PerturbationKind::Densify, PerturbationKind::Sparsify, PerturbationKind::Singletons,
                      PerturbationKind::Duplicates}) {
        SweepSpec spec{kind, 20, 8, 11, 1};
        auto serial = run_sweep_serial(g, spec, Delta(1, 2));
        auto parallel = run_sweep(g, spec, Delta(1, 2), 3);
        ASSERT_EQ(serial.rows.size(), parallel.rows.size());
        for (std::size_t i = 0; i < serial.rows.size(); ++i) {
            EXPECT_EQ(serial.rows[i].modifications, parallel.rows[i].modifications);
            EXPECT_EQ(serial.rows[i].mrs, parallel.rows[i].mrs);
            EXPECT_EQ(serial.rows[i].mcs, parallel.rows[i].mcs);
            EXPECT_EQ(serial.rows[i].robustness, parallel.rows[i].robustness);
        }
    }
}

TEST(Sweep, SparsifyReportsUnreachableMrsAndTruncation) {
    SweepSpec spec{PerturbationKind::Sparsify, 2, 3, 1, 1};
    auto table = run_sweep(oracle::four_edge(), spec, Delta(1, 2));
    EXPECT_TRUE(table.truncated);
    ASSERT_EQ(table.rows.size(), 3u);
    EXPECT_FALSE(table.rows[2].mrs.has_value());
    EXPECT_EQ(table.rows[2].robustness, 0.0);
}

TEST(Sweep, DuplicatesWrapFlag) {
    SweepSpec spec{PerturbationKind::Duplicates, 1, 3, 0, 1};
    EXPECT_TRUE(run_sweep(oracle::four_edge(), spec, Delta(1, 2)).wrapped);
    spec.n_batches = 2;
    EXPECT_FALSE(run_sweep(oracle::four_edge(), spec, Delta(1, 2)).wrapped);
}

TEST(Sweep, ParsesKinds) {
    for (auto k : {PerturbationKind::Densify, PerturbationKind::Sparsify, PerturbationKind::Singletons,
                   PerturbationKind::Duplicates})
        EXPECT_EQ(parse_perturbation(to_string(k)), k);
    EXPECT_THROW(parse_perturbation("rewire"), InvalidArgument);
}
