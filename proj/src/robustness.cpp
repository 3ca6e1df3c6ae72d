#include "busfactor/robustness.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "busfactor/errors.hpp"
#include "busfactor/parallel.hpp"
#include "busfactor/union_find.hpp"

namespace busfactor {
namespace {

std::vector<Index> to_indices(const ProjectGraph& graph, std::span<const PersonId> removal) {
    if (removal.size() != graph.person_count())
        throw InvalidArgument("removal sequence has " + std::to_string(removal.size()) +
                              " entries, graph has " + std::to_string(graph.person_count()) + " people");
    std::vector<Index> out;
    out.reserve(removal.size());
    std::vector<bool> seen(graph.person_count(), false);
    for (PersonId id : removal) {
        Index i = graph.person_index(id);
        if (seen[i]) throw InvalidArgument("removal sequence repeats " + to_string(id));
        seen[i] = true;
        out.push_back(i);
    }
    return out;
}

RemovalSequence to_ids(const ProjectGraph& graph, std::span<const Index> order) {
    RemovalSequence out;
    out.reserve(order.size());
    for (Index i : order) out.push_back(graph.person_id(i));
    return out;
}

void require_nondegenerate(const ProjectGraph& graph) {
    if (graph.task_count() == 0) throw DegenerateError("robustness requires at least one task");
    if (graph.person_count() == 0) throw DegenerateError("robustness requires at least one person");
}

/// Adaptive attack: repeatedly take the highest-degree person inside the current
/// largest connected task component.
std::vector<Index> adaptive_removal_order(const ProjectGraph& graph) {
    const std::size_t np = graph.person_count();
    const std::size_t nt = graph.task_count();
    std::vector<bool> removed(np, false);
    std::vector<Index> order;
    order.reserve(np);
    std::vector<int> component(np);
    std::vector<bool> seen_task(nt);
    std::vector<Index> stack;
    for (std::size_t step = 0; step < np; ++step) {
        std::fill(component.begin(), component.end(), -1);
        std::fill(seen_task.begin(), seen_task.end(), false);
        int best_component = -1;
        std::size_t best_tasks = 0;
        int next_label = 0;
        for (Index start = 0; start < np; ++start) {
            if (removed[start] || component[start] >= 0) continue;
            int label = next_label++;
            component[start] = label;
            stack.assign(1, start);
            std::size_t tasks = 0;
            while (!stack.empty()) {
                Index p = stack.back();
                stack.pop_back();
                for (Index t : graph.tasks_of(p)) {
                    if (seen_task[t]) continue;
                    seen_task[t] = true;
                    ++tasks;
                    for (Index q : graph.people_of(t)) {
                        if (removed[q] || component[q] >= 0) continue;
                        component[q] = label;
                        stack.push_back(q);
                    }
                }
            }
            if (best_component < 0 || tasks > best_tasks) {
                best_component = label;
                best_tasks = tasks;
            }
        }
        Index pick = 0;
        bool found = false;
        for (Index p = 0; p < np; ++p) {
            if (removed[p] || component[p] != best_component) continue;
            if (!found || graph.person_degree(p) > graph.person_degree(pick)) {
                pick = p;
                found = true;
            }
        }
        removed[pick] = true;
        order.push_back(pick);
    }
    return order;
}

RobustnessResult make_result(const ProjectGraph& graph, std::span<const Index> order, DecayCurve curve) {
    RobustnessResult r;
    r.value = normalized_robustness(curve_area(curve), graph.task_count(), graph.person_count());
    r.sequence = to_ids(graph, order);
    r.curve = std::move(curve);
    return r;
}

struct ExactBest {
    std::uint64_t area = 0;
    std::vector<Index> order;
    bool valid = false;
};

/// Minimum over all permutations that start with `first`, scanned in lexicographic
/// order so the first strict minimum is also the lexicographically smallest.
ExactBest best_with_prefix(const ProjectGraph& graph, Index first) {
    const std::size_t np = graph.person_count();
    std::vector<Index> order;
    order.reserve(np);
    order.push_back(first);
    for (Index p = 0; p < np; ++p)
        if (p != first) order.push_back(p);
    ExactBest best;
    do {
        std::uint64_t area = curve_area(decay_curve_by_index(graph, order));
        if (!best.valid || area < best.area) {
            best.area = area;
            best.order = order;
            best.valid = true;
        }
    } while (std::next_permutation(order.begin() + 1, order.end()));
    return best;
}

void check_exact_guard(const ProjectGraph& graph) {
    if (graph.person_count() > kExactRobustnessMaxPeople)
        throw GuardError("exact robustness oracle limited to " + std::to_string(kExactRobustnessMaxPeople) +
                         " people, got " + std::to_string(graph.person_count()));
}

}  // namespace

DecayCurve decay_curve_by_index(const ProjectGraph& graph, std::span<const Index> removal) {
    const std::size_t np = graph.person_count();
    const std::size_t nt = graph.task_count();
    // Nodes [0, nt) are tasks, [nt, nt + np) people. Every merge involves the
    // person just added, so only that person's component can become the largest.
    UnionFind forest(nt + np);
    std::vector<std::uint32_t> tasks_in(nt + np, 0);
    for (std::size_t t = 0; t < nt; ++t) tasks_in[t] = 1;

    DecayCurve curve(removal.size() + 1, 0);
    std::size_t largest = 0;
    for (std::size_t i = removal.size(); i-- > 0;) {
        const Index person = removal[i];
        const auto node = static_cast<std::uint32_t>(nt + person);
        for (Index t : graph.tasks_of(person)) {
            auto [root, absorbed] = forest.unite(node, t);
            if (root == absorbed) continue;
            tasks_in[root] += tasks_in[absorbed];
        }
        const std::uint32_t root = forest.find(node);
        largest = std::max<std::size_t>(largest, tasks_in[root]);
        curve[i] = largest;
    }
    return curve;
}

DecayCurve decay_curve(const ProjectGraph& graph, std::span<const PersonId> removal) {
    return decay_curve_by_index(graph, to_indices(graph, removal));
}

DecayCurve decay_curve_naive(const ProjectGraph& graph, std::span<const PersonId> removal) {
    to_indices(graph, removal);
    DecayCurve curve;
    curve.reserve(removal.size() + 1);
    for (std::size_t i = 0; i <= removal.size(); ++i)
        curve.push_back(lctc_size(remove_people(graph, removal.first(i))));
    return curve;
}

std::uint64_t curve_area(const DecayCurve& curve) {
    std::uint64_t area = 0;
    for (std::size_t i = 1; i < curve.size(); ++i) area += curve[i - 1] + curve[i];
    return area;
}

double normalized_robustness(std::uint64_t area, std::size_t n_tasks, std::size_t n_people) {
    if (n_tasks == 0) throw DegenerateError("robustness requires at least one task");
    if (n_people == 0) throw DegenerateError("robustness requires at least one person");
    const std::uint64_t max_area = static_cast<std::uint64_t>(n_tasks) * (2 * n_people - 1);
    return static_cast<double>(area) / static_cast<double>(max_area);
}

double robustness(const ProjectGraph& graph, std::span<const PersonId> removal) {
    require_nondegenerate(graph);
    return normalized_robustness(curve_area(decay_curve(graph, removal)), graph.task_count(),
                                 graph.person_count());
}

std::vector<Index> greedy_removal_order(const ProjectGraph& graph) {
    std::vector<Index> order(graph.person_count());
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&graph](Index a, Index b) {
        return graph.person_degree(a) > graph.person_degree(b);
    });
    return order;
}

RobustnessResult bus_factor_greedy(const ProjectGraph& graph, GreedyOrder mode) {
    require_nondegenerate(graph);
    std::vector<Index> order =
        mode == GreedyOrder::Static ? greedy_removal_order(graph) : adaptive_removal_order(graph);
    return make_result(graph, order, decay_curve_by_index(graph, order));
}

RobustnessResult bus_factor_exact_serial(const ProjectGraph& graph) {
    require_nondegenerate(graph);
    check_exact_guard(graph);
    std::vector<Index> order(graph.person_count());
    std::iota(order.begin(), order.end(), Index{0});
    ExactBest best;
    do {
        std::uint64_t area = curve_area(decay_curve_by_index(graph, order));
        if (!best.valid || area < best.area) {
            best.area = area;
            best.order = order;
            best.valid = true;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return make_result(graph, best.order, decay_curve_by_index(graph, best.order));
}

RobustnessResult bus_factor_exact(const ProjectGraph& graph, int workers) {
    require_nondegenerate(graph);
    check_exact_guard(graph);
    const std::size_t np = graph.person_count();
    std::vector<ExactBest> per_first(np);
    parallel_for(np, workers, [&](std::size_t first) {
        per_first[first] = best_with_prefix(graph, static_cast<Index>(first));
    });

    // Prefixes are visited in increasing order, so a strict comparison keeps the
    // lexicographically smallest sequence among equal areas.
    const ExactBest* best = &per_first.front();
    for (const ExactBest& candidate : per_first)
        if (candidate.area < best->area) best = &candidate;
    return make_result(graph, best->order, decay_curve_by_index(graph, best->order));
}

}  // namespace busfactor
