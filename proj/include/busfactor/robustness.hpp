#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "busfactor/graph.hpp"

namespace busfactor {

/// Order in which people leave the project.
using RemovalSequence = std::vector<PersonId>;

/// tau_0 .. tau_|P|: largest connected task component after 0..|P| removals.
using DecayCurve = std::vector<std::size_t>;

struct RobustnessResult {
    double value = 0.0;
    RemovalSequence sequence;
    DecayCurve curve;
};

/// Largest instance accepted by the factorial oracle (8! sequences).
inline constexpr std::size_t kExactRobustnessMaxPeople = 8;

/// Decay curve by reverse simulation: start from the task-only graph, add people
/// back in reverse removal order with a disjoint-set forest and record the largest
/// task count among components that hold a person.
/// Throws InvalidArgument unless `removal` is a permutation of the people.
DecayCurve decay_curve(const ProjectGraph& graph, std::span<const PersonId> removal);

/// Same contract; recomputes components from scratch after every removal.
DecayCurve decay_curve_naive(const ProjectGraph& graph, std::span<const PersonId> removal);

/// Index-based variant of decay_curve without permutation validation.
DecayCurve decay_curve_by_index(const ProjectGraph& graph, std::span<const Index> removal);

/// Sum over steps of (tau_{i-1} + tau_i): twice the trapezoidal area.
std::uint64_t curve_area(const DecayCurve& curve);

/// Area normalised by its complete-graph maximum |T| (2|P| - 1).
/// Throws DegenerateError if either side is empty.
double normalized_robustness(std::uint64_t area, std::size_t n_tasks, std::size_t n_people);

/// Normalised area under the decay curve of `removal`, in [0, 1].
double robustness(const ProjectGraph& graph, std::span<const PersonId> removal);

enum class GreedyOrder {
    /// One-shot sort by decreasing initial degree.
    Static,
    /// Before each removal, pick the person with the most tasks inside the current
    /// largest connected task component.
    Adaptive,
};

/// Greedy people order: decreasing degree, ties to the smallest id.
std::vector<Index> greedy_removal_order(const ProjectGraph& graph);

/// Upper bound on the worst-case robustness from a degree-ordered attack.
RobustnessResult bus_factor_greedy(const ProjectGraph& graph, GreedyOrder order = GreedyOrder::Static);

/// Exhaustive minimum over all removal sequences; ties go to the lexicographically
/// smallest sequence. The first removal is distributed over `workers` threads.
/// Throws GuardError above kExactRobustnessMaxPeople.
RobustnessResult bus_factor_exact(const ProjectGraph& graph, int workers = 1);

/// Single-threaded reference for bus_factor_exact.
RobustnessResult bus_factor_exact_serial(const ProjectGraph& graph);

}  // namespace busfactor
