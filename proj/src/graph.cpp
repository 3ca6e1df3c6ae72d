#include "busfactor/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "busfactor/errors.hpp"

namespace busfactor {
namespace {

template <typename Id>
Index lookup(const std::vector<Id>& ids, Id id) {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id) throw InvalidArgument("unknown node " + to_string(id));
    return static_cast<Index>(it - ids.begin());
}

template <typename Id>
bool contains(const std::vector<Id>& ids, Id id) {
    return std::binary_search(ids.begin(), ids.end(), id);
}

bool insert_sorted(std::vector<Index>& list, Index value) {
    auto it = std::lower_bound(list.begin(), list.end(), value);
    if (it != list.end() && *it == value) return false;
    list.insert(it, value);
    return true;
}

bool erase_sorted(std::vector<Index>& list, Index value) {
    auto it = std::lower_bound(list.begin(), list.end(), value);
    if (it == list.end() || *it != value) return false;
    list.erase(it);
    return true;
}

std::vector<bool> removal_mask(const ProjectGraph& graph, std::span<const PersonId> removed) {
    std::vector<bool> mask(graph.person_count(), false);
    for (PersonId id : removed) mask[graph.person_index(id)] = true;
    return mask;
}

}  // namespace

ProjectGraph ProjectGraph::with_counts(std::size_t n_people, std::size_t n_tasks) {
    ProjectGraph g;
    g.person_ids_.reserve(n_people);
    g.task_ids_.reserve(n_tasks);
    for (std::size_t i = 0; i < n_people; ++i) g.person_ids_.push_back(PersonId{i + 1});
    for (std::size_t i = 0; i < n_tasks; ++i) g.task_ids_.push_back(TaskId{i + 1});
    g.person_adj_.resize(n_people);
    g.task_adj_.resize(n_tasks);
    return g;
}

ProjectGraph ProjectGraph::from_edges(std::span<const PersonId> people,
                                      std::span<const TaskId> tasks,
                                      std::span<const Edge> edges) {
    ProjectGraph g;
    g.person_ids_.assign(people.begin(), people.end());
    g.task_ids_.assign(tasks.begin(), tasks.end());
    for (const Edge& e : edges) {
        g.person_ids_.push_back(e.person);
        g.task_ids_.push_back(e.task);
    }
    std::sort(g.person_ids_.begin(), g.person_ids_.end());
    g.person_ids_.erase(std::unique(g.person_ids_.begin(), g.person_ids_.end()), g.person_ids_.end());
    std::sort(g.task_ids_.begin(), g.task_ids_.end());
    g.task_ids_.erase(std::unique(g.task_ids_.begin(), g.task_ids_.end()), g.task_ids_.end());
    g.person_adj_.resize(g.person_ids_.size());
    g.task_adj_.resize(g.task_ids_.size());

    for (const Edge& e : edges) {
        Index p = g.person_index(e.person);
        Index t = g.task_index(e.task);
        g.person_adj_[p].push_back(t);
        g.task_adj_[t].push_back(p);
    }
    for (auto& adj : g.person_adj_) {
        std::sort(adj.begin(), adj.end());
        auto dup = std::adjacent_find(adj.begin(), adj.end());
        if (dup != adj.end()) {
            Index p = static_cast<Index>(&adj - g.person_adj_.data());
            throw InvalidArgument("duplicate edge (" + to_string(g.person_ids_[p]) + "," +
                                  to_string(g.task_ids_[*dup]) + ")");
        }
    }
    for (auto& adj : g.task_adj_) std::sort(adj.begin(), adj.end());
    g.edge_count_ = edges.size();
    return g;
}

Index ProjectGraph::person_index(PersonId id) const { return lookup(person_ids_, id); }
Index ProjectGraph::task_index(TaskId id) const { return lookup(task_ids_, id); }
bool ProjectGraph::has_person(PersonId id) const { return contains(person_ids_, id); }
bool ProjectGraph::has_task(TaskId id) const { return contains(task_ids_, id); }

bool ProjectGraph::has_edge_at(Index person, Index task) const {
    const auto& adj = person_adj_[person];
    return std::binary_search(adj.begin(), adj.end(), task);
}

bool ProjectGraph::has_edge(PersonId person, TaskId task) const {
    return has_edge_at(person_index(person), task_index(task));
}

std::vector<Edge> ProjectGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Index p = 0; p < person_adj_.size(); ++p)
        for (Index t : person_adj_[p]) out.push_back({person_ids_[p], task_ids_[t]});
    return out;
}

std::vector<std::size_t> ProjectGraph::person_degrees() const {
    std::vector<std::size_t> d(person_adj_.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = person_adj_[i].size();
    return d;
}

std::vector<std::size_t> ProjectGraph::task_degrees() const {
    std::vector<std::size_t> d(task_adj_.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = task_adj_[i].size();
    return d;
}

void ProjectGraph::add_edge_at(Index person, Index task) {
    if (!insert_sorted(person_adj_[person], task))
        throw InvalidArgument("duplicate edge (" + to_string(person_ids_[person]) + "," +
                              to_string(task_ids_[task]) + ")");
    insert_sorted(task_adj_[task], person);
    ++edge_count_;
}

void ProjectGraph::remove_edge_at(Index person, Index task) {
    if (!erase_sorted(person_adj_[person], task))
        throw InvalidArgument("missing edge (" + to_string(person_ids_[person]) + "," +
                              to_string(task_ids_[task]) + ")");
    erase_sorted(task_adj_[task], person);
    --edge_count_;
}

void ProjectGraph::add_edge(PersonId person, TaskId task) {
    add_edge_at(person_index(person), task_index(task));
}

void ProjectGraph::remove_edge(PersonId person, TaskId task) {
    remove_edge_at(person_index(person), task_index(task));
}

PersonId ProjectGraph::next_person_id() const {
    return person_ids_.empty() ? PersonId{1} : PersonId{person_ids_.back().value + 1};
}

TaskId ProjectGraph::next_task_id() const {
    return task_ids_.empty() ? TaskId{1} : TaskId{task_ids_.back().value + 1};
}

PersonId ProjectGraph::add_person() {
    PersonId id = next_person_id();
    person_ids_.push_back(id);
    person_adj_.emplace_back();
    return id;
}

TaskId ProjectGraph::add_task() {
    TaskId id = next_task_id();
    task_ids_.push_back(id);
    task_adj_.emplace_back();
    return id;
}

PersonId ProjectGraph::clone_person(PersonId source) {
    Index src = person_index(source);
    PersonId id = add_person();
    Index dst = static_cast<Index>(person_ids_.size() - 1);
    person_adj_[dst] = person_adj_[src];
    // dst is the largest index, so appending keeps task lists sorted.
    for (Index t : person_adj_[dst]) task_adj_[t].push_back(dst);
    edge_count_ += person_adj_[dst].size();
    return id;
}

CoverageSet coverage(const ProjectGraph& graph, std::span<const PersonId> team) {
    std::vector<bool> covered(graph.task_count(), false);
    for (PersonId id : team)
        for (Index t : graph.tasks_of(graph.person_index(id))) covered[t] = true;
    CoverageSet out;
    for (Index t = 0; t < covered.size(); ++t)
        if (covered[t]) out.push_back(graph.task_id(t));
    return out;
}

ProjectGraph remove_people(const ProjectGraph& graph, std::span<const PersonId> removed) {
    auto mask = removal_mask(graph, removed);
    std::vector<PersonId> people;
    std::vector<Edge> edges;
    for (Index p = 0; p < graph.person_count(); ++p) {
        if (mask[p]) continue;
        people.push_back(graph.person_id(p));
        for (Index t : graph.tasks_of(p)) edges.push_back({graph.person_id(p), graph.task_id(t)});
    }
    return ProjectGraph::from_edges(people, graph.tasks(), edges);
}

std::size_t lctc_size(const ProjectGraph& graph) {
    // Breadth-first search from every unvisited person; tasks reachable from a
    // person are exactly the non-abandoned tasks of its component.
    const std::size_t np = graph.person_count();
    std::vector<bool> seen_person(np, false);
    std::vector<bool> seen_task(graph.task_count(), false);
    std::deque<Index> queue;
    std::size_t best = 0;
    for (Index start = 0; start < np; ++start) {
        if (seen_person[start]) continue;
        seen_person[start] = true;
        queue.push_back(start);
        std::size_t tasks_in_component = 0;
        while (!queue.empty()) {
            Index p = queue.front();
            queue.pop_front();
            for (Index t : graph.tasks_of(p)) {
                if (seen_task[t]) continue;
                seen_task[t] = true;
                ++tasks_in_component;
                for (Index q : graph.people_of(t)) {
                    if (!seen_person[q]) {
                        seen_person[q] = true;
                        queue.push_back(q);
                    }
                }
            }
        }
        best = std::max(best, tasks_in_component);
    }
    return best;
}

bool is_backbone_set(const ProjectGraph& graph, std::span<const PersonId> removed) {
    auto mask = removal_mask(graph, removed);
    for (Index t = 0; t < graph.task_count(); ++t) {
        std::size_t remaining = 0;
        for (Index p : graph.people_of(t))
            if (!mask[p]) ++remaining;
        if (remaining > 1) return false;
    }
    return true;
}

ProjectGraph mutate(const ProjectGraph& graph, const Mutation& action) {
    ProjectGraph out = graph;
    std::visit(
        [&out](const auto& a) {
            using A = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<A, mutation::AddEdge>) {
                out.add_edge(a.person, a.task);
            } else if constexpr (std::is_same_v<A, mutation::RemoveEdge>) {
                out.remove_edge(a.person, a.task);
            } else if constexpr (std::is_same_v<A, mutation::AddPerson>) {
                out.add_person();
            } else if constexpr (std::is_same_v<A, mutation::AddTask>) {
                out.add_task();
            } else {
                out.clone_person(a.source);
            }
        },
        action);
    return out;
}

}  // namespace busfactor
