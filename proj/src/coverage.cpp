#include "busfactor/coverage.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

#include "busfactor/errors.hpp"

namespace busfactor {
namespace {

std::size_t covered_count(const ProjectGraph& graph) {
    std::size_t n = 0;
    for (Index t = 0; t < graph.task_count(); ++t)
        if (graph.task_degree(t) > 0) ++n;
    return n;
}

/// Per-person task bitsets for the exhaustive oracles.
class TaskMasks {
public:
    explicit TaskMasks(const ProjectGraph& graph)
        : words_((graph.task_count() + 63) / 64), masks_(graph.person_count() * words_, 0) {
        for (Index p = 0; p < graph.person_count(); ++p)
            for (Index t : graph.tasks_of(p)) masks_[p * words_ + t / 64] |= std::uint64_t{1} << (t % 64);
    }

    /// Number of tasks covered by everyone whose `excluded` flag is false.
    std::size_t coverage_without(const std::vector<bool>& excluded, std::vector<std::uint64_t>& scratch) const {
        std::fill(scratch.begin(), scratch.end(), 0);
        for (std::size_t p = 0; p < excluded.size(); ++p) {
            if (excluded[p]) continue;
            for (std::size_t w = 0; w < words_; ++w) scratch[w] |= masks_[p * words_ + w];
        }
        std::size_t n = 0;
        for (auto word : scratch) n += static_cast<std::size_t>(std::popcount(word));
        return n;
    }

    std::size_t words() const { return words_; }

private:
    std::size_t words_;
    std::vector<std::uint64_t> masks_;
};

/// Visits every size-k subset of {0..n-1} in lexicographic order until `visit`
/// returns true. Returns the accepted subset, or an empty optional.
template <typename Visit>
std::optional<std::vector<Index>> first_combination(std::size_t n, std::size_t k, Visit&& visit) {
    std::vector<Index> combo(k);
    std::iota(combo.begin(), combo.end(), Index{0});
    while (true) {
        if (visit(combo)) return combo;
        // Advance to the next combination in lexicographic order.
        std::size_t i = k;
        while (i > 0 && combo[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return std::nullopt;
        ++combo[i - 1];
        for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
}

void check_guard(const ProjectGraph& graph) {
    if (graph.person_count() > kExactCoverageMaxPeople)
        throw GuardError("exact coverage oracle limited to " + std::to_string(kExactCoverageMaxPeople) +
                         " people, got " + std::to_string(graph.person_count()));
}

std::vector<PersonId> to_ids(const ProjectGraph& graph, const std::vector<Index>& indices) {
    std::vector<PersonId> out;
    out.reserve(indices.size());
    for (Index i : indices) out.push_back(graph.person_id(i));
    return out;
}

}  // namespace

std::vector<PersonId> mrs_greedy(const ProjectGraph& graph, Delta delta) {
    const std::size_t np = graph.person_count();
    const std::size_t nt = graph.task_count();
    if (np == 0) throw DegenerateError("MRS requires at least one person");
    if (!delta.reached_by(covered_count(graph), nt))
        throw InfeasibleError("coverage target " + delta.to_string() + " * " + std::to_string(nt) +
                              " tasks unreachable even keeping everyone");

    std::vector<std::size_t> gain(np);
    for (Index p = 0; p < np; ++p) gain[p] = graph.person_degree(p);
    std::vector<bool> kept(np, false);
    std::vector<bool> covered(nt, false);
    std::size_t n_covered = 0;

    while (!delta.reached_by(n_covered, nt)) {
        Index best = 0;
        bool found = false;
        for (Index p = 0; p < np; ++p) {
            if (kept[p]) continue;
            if (!found || gain[p] > gain[best]) {
                best = p;
                found = true;
            }
        }
        if (!found || gain[best] == 0) throw InvariantViolation("greedy cover stalled below a feasible target");
        kept[best] = true;
        for (Index t : graph.tasks_of(best)) {
            if (covered[t]) continue;
            covered[t] = true;
            ++n_covered;
            for (Index q : graph.people_of(t)) --gain[q];
        }
    }

    std::vector<PersonId> redundant;
    for (Index p = 0; p < np; ++p)
        if (!kept[p]) redundant.push_back(graph.person_id(p));
    return redundant;
}

std::vector<PersonId> mcs_greedy(const ProjectGraph& graph, Delta delta) {
    const std::size_t np = graph.person_count();
    const std::size_t nt = graph.task_count();
    if (nt == 0) throw DegenerateError("MCS requires at least one task");

    // A remaining person's tasks are covered by that person, so the active
    // degree of everyone still present equals their plain degree and the
    // removal order is a stable sort by decreasing degree.
    std::vector<Index> order(np);
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&graph](Index a, Index b) {
        return graph.person_degree(a) > graph.person_degree(b);
    });

    std::vector<std::size_t> cover_count = graph.task_degrees();
    std::size_t n_covered = covered_count(graph);
    std::vector<PersonId> removed;
    for (Index p : order) {
        if (!delta.reached_by(n_covered, nt)) break;
        removed.push_back(graph.person_id(p));
        for (Index t : graph.tasks_of(p))
            if (--cover_count[t] == 0) --n_covered;
    }
    if (delta.reached_by(n_covered, nt))
        throw InvariantViolation("coverage still above threshold after removing everyone");
    return removed;
}

std::vector<PersonId> mrs_exact(const ProjectGraph& graph, Delta delta) {
    check_guard(graph);
    const std::size_t np = graph.person_count();
    const std::size_t nt = graph.task_count();
    if (np == 0) throw DegenerateError("MRS requires at least one person");
    TaskMasks masks(graph);
    std::vector<std::uint64_t> scratch(masks.words());
    std::vector<bool> excluded(np, false);
    for (std::size_t k = np + 1; k-- > 0;) {
        auto hit = first_combination(np, k, [&](const std::vector<Index>& combo) {
            std::fill(excluded.begin(), excluded.end(), false);
            for (Index i : combo) excluded[i] = true;
            return delta.reached_by(masks.coverage_without(excluded, scratch), nt);
        });
        if (hit) return to_ids(graph, *hit);
    }
    throw InfeasibleError("coverage target " + delta.to_string() + " * " + std::to_string(nt) +
                          " tasks unreachable even keeping everyone");
}

std::vector<PersonId> mcs_exact(const ProjectGraph& graph, Delta delta) {
    check_guard(graph);
    const std::size_t np = graph.person_count();
    const std::size_t nt = graph.task_count();
    if (nt == 0) throw DegenerateError("MCS requires at least one task");
    TaskMasks masks(graph);
    std::vector<std::uint64_t> scratch(masks.words());
    std::vector<bool> excluded(np, false);
    for (std::size_t k = 0; k <= np; ++k) {
        auto hit = first_combination(np, k, [&](const std::vector<Index>& combo) {
            std::fill(excluded.begin(), excluded.end(), false);
            for (Index i : combo) excluded[i] = true;
            return !delta.reached_by(masks.coverage_without(excluded, scratch), nt);
        });
        if (hit) return to_ids(graph, *hit);
    }
    throw InvariantViolation("no critical set found although removing everyone uncovers all tasks");
}

CoverageReport coverage_report(const ProjectGraph& graph, Delta delta) {
    CoverageReport report;
    report.delta = delta;
    report.mrs_set = mrs_greedy(graph, delta);
    report.mcs_set = mcs_greedy(graph, delta);
    report.z_best = static_cast<long long>(report.mrs_set.size());
    report.z_worst = static_cast<long long>(report.mcs_set.size()) - 1;
    return report;
}

}  // namespace busfactor
