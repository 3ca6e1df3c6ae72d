#include "busfactor/optimize.hpp"

#include <algorithm>

#include "busfactor/errors.hpp"
#include "busfactor/parallel.hpp"
#include "busfactor/random.hpp"
#include "busfactor/stats.hpp"

namespace busfactor {
namespace {

bool holds(const std::vector<Index>& tasks, Index t) {
    return std::find(tasks.begin(), tasks.end(), t) != tasks.end();
}

void replace(std::vector<Index>& list, Index from, Index to) { *std::find(list.begin(), list.end(), from) = to; }

// Calibration draws come from their own stream family so they never coincide with
// the samples of a regular permutation test run with the same seed.
constexpr std::uint64_t kCalibrationStream = 0x6b43a9b5f1e2d3c7ULL;

}  // namespace

void NullModelConfig::validate() const {
    if (n_samples < 1) throw InvalidArgument("null model needs at least one sample");
}

NullSample null_sample(const ProjectGraph& graph, const NullModelConfig& config, std::size_t sample_index) {
    NullSample out;
    const std::size_t m = graph.edge_count();
    if (m < 2) {
        out.graph = graph;
        out.too_few_edges = true;
        return out;
    }
    std::vector<std::pair<Index, Index>> edges;
    edges.reserve(m);
    // Unsorted per-person task lists; lookups scan a single neighbourhood.
    std::vector<std::vector<Index>> adjacency(graph.person_count());
    for (Index p = 0; p < graph.person_count(); ++p) {
        for (Index t : graph.tasks_of(p)) edges.emplace_back(p, t);
        adjacency[p].assign(graph.tasks_of(p).begin(), graph.tasks_of(p).end());
    }

    Rng rng(derive_seed(config.seed, sample_index));
    const std::size_t attempts = config.swaps_per_edge * m;
    for (std::size_t a = 0; a < attempts; ++a) {
        const std::size_t i = rng.below(m);
        const std::size_t j = rng.below(m);
        if (i == j) continue;
        auto [p1, t1] = edges[i];
        auto [p2, t2] = edges[j];
        if (p1 == p2 || t1 == t2) continue;
        if (holds(adjacency[p1], t2) || holds(adjacency[p2], t1)) continue;
        replace(adjacency[p1], t1, t2);
        replace(adjacency[p2], t2, t1);
        edges[i].second = t2;
        edges[j].second = t1;
        ++out.accepted_swaps;
    }

    std::vector<Edge> ids;
    ids.reserve(m);
    for (auto [p, t] : edges) ids.push_back({graph.person_id(p), graph.task_id(t)});
    out.graph = ProjectGraph::from_edges(graph.people(), graph.tasks(), ids);
    return out;
}

double lower_tail_p_value(double observed, std::span<const double> null_values) {
    const auto extreme = std::count_if(null_values.begin(), null_values.end(),
                                       [observed](double v) { return v <= observed; });
    return (1.0 + static_cast<double>(extreme)) / (static_cast<double>(null_values.size()) + 1.0);
}

PermutationTestResult permutation_test(const ProjectGraph& graph, const NullModelConfig& config, int workers) {
    config.validate();
    PermutationTestResult result;
    result.observed = bus_factor_greedy(graph).value;
    result.null_values.resize(config.n_samples);
    parallel_for(config.n_samples, workers, [&](std::size_t i) {
        result.null_values[i] = bus_factor_greedy(null_sample(graph, config, i).graph).value;
    });
    result.p_value = lower_tail_p_value(result.observed, result.null_values);
    return result;
}

PermutationTestResult permutation_test_serial(const ProjectGraph& graph, const NullModelConfig& config) {
    config.validate();
    PermutationTestResult result;
    result.observed = bus_factor_greedy(graph).value;
    for (std::size_t i = 0; i < config.n_samples; ++i)
        result.null_values.push_back(bus_factor_greedy(null_sample(graph, config, i).graph).value);
    result.p_value = lower_tail_p_value(result.observed, result.null_values);
    return result;
}

CalibrationResult calibrate_permutation_test(const ProjectGraph& graph, const NullModelConfig& config,
                                             std::size_t trials, int workers) {
    config.validate();
    if (trials < 1) throw InvalidArgument("calibration needs at least one trial");
    // Trial r uses slot 0 as the observed graph and slots 1..n as its ensemble.
    const std::size_t per_trial = config.n_samples + 1;
    NullModelConfig stream = config;
    stream.seed = derive_seed(config.seed, kCalibrationStream);
    std::vector<double> values(trials * per_trial);
    parallel_for(values.size(), workers, [&](std::size_t k) {
        values[k] = bus_factor_greedy(null_sample(graph, stream, k).graph).value;
    });

    CalibrationResult result;
    result.p_values.reserve(trials);
    for (std::size_t r = 0; r < trials; ++r) {
        std::span<const double> block(values.data() + r * per_trial, per_trial);
        result.p_values.push_back(lower_tail_p_value(block.front(), block.subspan(1)));
    }
    auto ks = stats::ks_uniform(result.p_values);
    result.ks_statistic = ks.statistic;
    result.ks_p_value = ks.p_value;
    return result;
}

}  // namespace busfactor
