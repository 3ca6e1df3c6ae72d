#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "busfactor/ids.hpp"

namespace busfactor {

/// Set of tasks covered by a team, sorted ascending.
using CoverageSet = std::vector<TaskId>;

/// Bipartite person-task graph.
///
/// People and tasks are stored at dense indices whose order matches the
/// ascending order of their external ids, so "smallest id" tie-breaks reduce
/// to "smallest index". Fresh nodes always receive id = largest id + 1, which
/// keeps that ordering under mutation. Adjacency lists are sorted.
class ProjectGraph {
public:
    ProjectGraph() = default;

    /// Graph with people p1..pN and tasks t1..tM, no edges.
    static ProjectGraph with_counts(std::size_t n_people, std::size_t n_tasks);

    /// Builds a graph from explicit node and edge lists. Edge endpoints are added
    /// to the node sets implicitly. Throws InvalidArgument on duplicate edges.
    static ProjectGraph from_edges(std::span<const PersonId> people,
                                   std::span<const TaskId> tasks,
                                   std::span<const Edge> edges);

    std::size_t person_count() const noexcept { return person_ids_.size(); }
    std::size_t task_count() const noexcept { return task_ids_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    std::span<const PersonId> people() const noexcept { return person_ids_; }
    std::span<const TaskId> tasks() const noexcept { return task_ids_; }

    PersonId person_id(Index i) const { return person_ids_[i]; }
    TaskId task_id(Index i) const { return task_ids_[i]; }

    /// Throws InvalidArgument for ids not in the graph.
    Index person_index(PersonId id) const;
    Index task_index(TaskId id) const;
    bool has_person(PersonId id) const;
    bool has_task(TaskId id) const;

    std::span<const Index> tasks_of(Index person) const { return person_adj_[person]; }
    std::span<const Index> people_of(Index task) const { return task_adj_[task]; }

    std::size_t person_degree(Index person) const { return person_adj_[person].size(); }
    std::size_t task_degree(Index task) const { return task_adj_[task].size(); }

    bool has_edge_at(Index person, Index task) const;
    bool has_edge(PersonId person, TaskId task) const;

    /// All edges ordered by (person, task).
    std::vector<Edge> edges() const;

    std::vector<std::size_t> person_degrees() const;
    std::vector<std::size_t> task_degrees() const;

    // In-place mutation on an exclusively owned graph.

    void add_edge(PersonId person, TaskId task);
    void remove_edge(PersonId person, TaskId task);
    void add_edge_at(Index person, Index task);
    void remove_edge_at(Index person, Index task);
    PersonId add_person();
    TaskId add_task();
    /// Fresh person with the same task neighbourhood as `source`.
    PersonId clone_person(PersonId source);

    PersonId next_person_id() const;
    TaskId next_task_id() const;

    friend bool operator==(const ProjectGraph&, const ProjectGraph&) = default;

private:
    std::vector<PersonId> person_ids_;
    std::vector<TaskId> task_ids_;
    std::vector<std::vector<Index>> person_adj_;
    std::vector<std::vector<Index>> task_adj_;
    std::size_t edge_count_ = 0;
};

/// Union of the neighbourhoods of `team`. Throws InvalidArgument for unknown ids.
CoverageSet coverage(const ProjectGraph& graph, std::span<const PersonId> team);

/// Copy of `graph` with the people in `removed` and their edges dropped. The task
/// node set is unchanged.
ProjectGraph remove_people(const ProjectGraph& graph, std::span<const PersonId> removed);

/// Number of tasks in the largest connected component that contains at least one
/// person. Tasks without any remaining person never count.
std::size_t lctc_size(const ProjectGraph& graph);

/// True iff, after removing `removed`, every task has at most one neighbour, i.e.
/// the remainder is a set of disjoint stars centred on people plus isolated nodes.
bool is_backbone_set(const ProjectGraph& graph, std::span<const PersonId> removed);

namespace mutation {
struct AddEdge { PersonId person; TaskId task; };
struct RemoveEdge { PersonId person; TaskId task; };
struct AddPerson {};
struct AddTask {};
struct ClonePerson { PersonId source; };
}  // namespace mutation

using Mutation = std::variant<mutation::AddEdge, mutation::RemoveEdge, mutation::AddPerson,
                              mutation::AddTask, mutation::ClonePerson>;

/// Returns a copy of `graph` with `action` applied.
ProjectGraph mutate(const ProjectGraph& graph, const Mutation& action);

}  // namespace busfactor
