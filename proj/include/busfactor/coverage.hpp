#pragma once

#include <cstddef>
#include <vector>

#include "busfactor/delta.hpp"
#include "busfactor/graph.hpp"

namespace busfactor {

/// Largest exact-oracle instance (2^20 subsets).
inline constexpr std::size_t kExactCoverageMaxPeople = 20;

/// Greedy Maximum Redundant Set: grows a keep-set by repeatedly taking the person
/// that covers the most still-uncovered tasks (ties to the smallest id) until the
/// kept coverage reaches delta * |T|; returns everyone else, sorted.
/// Throws InfeasibleError if even the whole team falls short of the target.
std::vector<PersonId> mrs_greedy(const ProjectGraph& graph, Delta delta);

/// Greedy Minimum Critical Set: removes the highest-degree remaining person (ties
/// to the smallest id) until coverage drops strictly below delta * |T|. Returned
/// in removal order. Throws DegenerateError when the graph has no tasks.
std::vector<PersonId> mcs_greedy(const ProjectGraph& graph, Delta delta);

/// Exhaustive oracles over all subsets; ties go to the lexicographically smallest
/// sorted id set. Throw GuardError above kExactCoverageMaxPeople.
std::vector<PersonId> mrs_exact(const ProjectGraph& graph, Delta delta);
std::vector<PersonId> mcs_exact(const ProjectGraph& graph, Delta delta);

struct CoverageReport {
    Delta delta;
    std::vector<PersonId> mrs_set;  // sorted
    std::vector<PersonId> mcs_set;  // removal order
    long long z_best = 0;
    long long z_worst = 0;
};

/// z_best = |MRS|, z_worst = |MCS| - 1, both from the greedy approximations.
CoverageReport coverage_report(const ProjectGraph& graph, Delta delta);

}  // namespace busfactor
