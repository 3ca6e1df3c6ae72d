#include <gtest/gtest.h>

#include <random>

#include "busfactor/errors.hpp"
#include "busfactor/graph.hpp"
#include "oracles.hpp"

using namespace busfactor;

namespace {

constexpr PersonId P(std::uint64_t v) { return PersonId{v}; }
constexpr TaskId T(std::uint64_t v) { return TaskId{v}; }

std::vector<TaskId> tasks(std::initializer_list<std::uint64_t> ids) {
    std::vector<TaskId> out;
    for (auto v : ids) out.push_back(T(v));
    return out;
}

}  // namespace

TEST(ProjectGraph, BuildsFromEdges) {
    auto g = oracle::four_edge();
    EXPECT_EQ(g.person_count(), 2u);
    EXPECT_EQ(g.task_count(), 3u);
    EXPECT_EQ(g.edge_count(), 4u);
    EXPECT_EQ(g.person_degree(g.person_index(P(1))), 2u);
    EXPECT_EQ(g.task_degree(g.task_index(T(2))), 2u);
    EXPECT_TRUE(g.has_edge(P(2), T(3)));
    EXPECT_FALSE(g.has_edge(P(1), T(3)));
}

TEST(ProjectGraph, RejectsDuplicateEdges) {
    std::vector<Edge> e{{P(1), T(1)}, {P(1), T(1)}};
    EXPECT_THROW(ProjectGraph::from_edges({}, {}, e), InvalidArgument);
}

TEST(ProjectGraph, UnknownIdsAreErrors) {
    auto g = oracle::four_edge();
    EXPECT_THROW(g.person_index(P(9)), InvalidArgument);
    std::vector<PersonId> team{P(9)};
    EXPECT_THROW(coverage(g, team), InvalidArgument);
    EXPECT_THROW(remove_people(g, team), InvalidArgument);
    EXPECT_THROW(is_backbone_set(g, team), InvalidArgument);
}

TEST(Coverage, ReadsOffAdjacency) {
    auto g = oracle::four_edge();
    std::vector<PersonId> p1{P(1)}, both{P(1), P(2)}, none;
    EXPECT_EQ(coverage(g, p1), tasks({1, 2}));
    EXPECT_TRUE(coverage(g, none).empty());
    EXPECT_EQ(coverage(g, both), tasks({1, 2, 3}));
}

TEST(RemovePeople, DropsIncidentEdges) {
    auto g = oracle::four_edge();
    std::vector<PersonId> p1{P(1)};
    auto h = remove_people(g, p1);
    EXPECT_EQ(h.person_count(), 1u);
    EXPECT_EQ(h.task_count(), 3u);
    EXPECT_EQ(h.edges(), (std::vector<Edge>{{P(2), T(2)}, {P(2), T(3)}}));
    EXPECT_EQ(h.task_degree(h.task_index(T(1))), 0u);

    EXPECT_EQ(remove_people(g, std::vector<PersonId>{}), g);
    std::vector<PersonId> all(g.people().begin(), g.people().end());
    EXPECT_EQ(remove_people(g, all).edge_count(), 0u);
}

TEST(Lctc, MatchesHandTraversal) {
    auto g = oracle::four_edge();
    // Frozen from oracle::lctc (label propagation): one component {t1,t2,t3}.
    ASSERT_EQ(oracle::lctc(g, {P(1), P(2)}), 3u);
    ASSERT_EQ(oracle::lctc(g, {P(2)}), 2u);
    EXPECT_EQ(lctc_size(g), 3u);
    std::vector<PersonId> p1{P(1)};
    EXPECT_EQ(lctc_size(remove_people(g, p1)), 2u);
    EXPECT_EQ(lctc_size(oracle::make({}, 3, 2)), 0u);
}

TEST(Lctc, AbandonedTasksNeverCount) {
    // Isolated tasks form their own components but hold no person.
    auto g = oracle::make({{1, 1}}, 0, 5);
    EXPECT_EQ(lctc_size(g), 1u);
}

TEST(Backbone, Examples) {
    auto shared = oracle::make({{1, 1}, {2, 1}});
    std::vector<PersonId> p1{P(1)}, none;
    EXPECT_TRUE(is_backbone_set(shared, p1));
    EXPECT_FALSE(is_backbone_set(shared, none));
    EXPECT_TRUE(is_backbone_set(oracle::four_edge(), p1));
}

TEST(Mutate, Actions) {
    auto g = oracle::four_edge();
    auto added = mutate(g, mutation::AddEdge{P(2), T(1)});
    EXPECT_EQ(added.edge_count(), 5u);
    EXPECT_THROW(mutate(g, mutation::AddEdge{P(1), T(1)}), InvalidArgument);

    auto cloned = mutate(g, mutation::ClonePerson{P(1)});
    ASSERT_TRUE(cloned.has_person(P(3)));
    std::vector<PersonId> p3{P(3)};
    EXPECT_EQ(coverage(cloned, p3), tasks({1, 2}));
    EXPECT_EQ(cloned.person_degree(cloned.person_index(P(3))), 2u);
    EXPECT_EQ(cloned.task_degree(cloned.task_index(T(1))), 2u);

    auto removed = mutate(g, mutation::RemoveEdge{P(1), T(1)});
    EXPECT_EQ(removed.task_degree(removed.task_index(T(1))), 0u);
    EXPECT_THROW(mutate(removed, mutation::RemoveEdge{P(1), T(1)}), InvalidArgument);

    auto more = mutate(mutate(g, mutation::AddPerson{}), mutation::AddTask{});
    EXPECT_TRUE(more.has_person(P(3)));
    EXPECT_TRUE(more.has_task(T(4)));
    EXPECT_EQ(more.edge_count(), 4u);
}

TEST(ProjectGraphProperties, RandomGraphs) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int np = 1 + int(rng() % 9), nt = 1 + int(rng() % 12);
        auto g = oracle::random_graph(rng, np, nt, 0.3);
        std::vector<PersonId> people(g.people().begin(), g.people().end());

        // Degrees agree with adjacency on both sides.
        std::size_t sum_p = 0, sum_t = 0;
        for (Index p = 0; p < g.person_count(); ++p) sum_p += g.person_degree(p);
        for (Index t = 0; t < g.task_count(); ++t) sum_t += g.task_degree(t);
        EXPECT_EQ(sum_p, g.edge_count());
        EXPECT_EQ(sum_t, g.edge_count());

        // Coverage monotonicity over nested prefixes.
        for (std::size_t k = 1; k <= people.size(); ++k) {
            auto small = coverage(g, std::span(people).first(k - 1));
            auto big = coverage(g, std::span(people).first(k));
            EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end()));
        }

        EXPECT_LE(lctc_size(g), g.task_count());
        EXPECT_EQ(lctc_size(g), oracle::lctc(g, {people.begin(), people.end()}));

        // Removing everyone but one person always leaves stars.
        for (std::size_t keep = 0; keep < people.size(); ++keep) {
            std::vector<PersonId> rest;
            for (std::size_t i = 0; i < people.size(); ++i)
                if (i != keep) rest.push_back(people[i]);
            EXPECT_TRUE(is_backbone_set(g, rest));
        }

        // Removal composes over disjoint sets.
        std::size_t split = people.size() / 2;
        auto a = std::span(people).first(split);
        auto b = std::span(people).subspan(split, (people.size() - split) / 2);
        std::vector<PersonId> ab(a.begin(), a.end());
        ab.insert(ab.end(), b.begin(), b.end());
        EXPECT_EQ(remove_people(remove_people(g, a), b), remove_people(g, ab));
    }
}

TEST(ProjectGraphProperties, ConnectedGraphCoveringAllTasksHasFullLctc) {
    EXPECT_EQ(lctc_size(oracle::complete(3, 4)), 4u);
    EXPECT_EQ(lctc_size(oracle::make({{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}, {3, 4}})), 4u);
}
