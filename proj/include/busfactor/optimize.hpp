#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "busfactor/graph.hpp"
#include "busfactor/robustness.hpp"

namespace busfactor {

// ---------------------------------------------------------------------------
// Degree-preserving null model
// ---------------------------------------------------------------------------

struct NullModelConfig {
    std::size_t n_samples = 1000;
    /// Double-edge-swap attempts per edge and sample.
    std::size_t swaps_per_edge = 10;
    std::uint64_t seed = 0;

    void validate() const;
};

struct NullSample {
    ProjectGraph graph;
    std::size_t accepted_swaps = 0;
    /// Fewer than two edges: nothing can be swapped and the input is returned.
    bool too_few_edges = false;
};

/// One randomised graph with the same person and task degree sequences, produced
/// by swaps_per_edge * |E| double-edge-swap attempts: (p1,t1),(p2,t2) become
/// (p1,t2),(p2,t1) when both new edges are absent. Deterministic per
/// (config.seed, sample_index).
NullSample null_sample(const ProjectGraph& graph, const NullModelConfig& config, std::size_t sample_index);

struct PermutationTestResult {
    double observed = 0.0;
    std::vector<double> null_values;
    /// Lower tail with add-one smoothing: (1 + #{null <= observed}) / (n + 1).
    double p_value = 1.0;
};

double lower_tail_p_value(double observed, std::span<const double> null_values);

/// Compares the greedy robustness of `graph` against that of config.n_samples
/// null samples, which are drawn on up to `workers` threads.
PermutationTestResult permutation_test(const ProjectGraph& graph, const NullModelConfig& config, int workers = 1);

/// Single-threaded reference for permutation_test.
PermutationTestResult permutation_test_serial(const ProjectGraph& graph, const NullModelConfig& config);

struct CalibrationResult {
    std::vector<double> p_values;
    double ks_statistic = 0.0;
    double ks_p_value = 1.0;
};

/// Runs `trials` permutation tests whose "observed" graph is itself a null sample
/// and tests the resulting p-values for uniformity (Kolmogorov-Smirnov).
CalibrationResult calibrate_permutation_test(const ProjectGraph& graph, const NullModelConfig& config,
                                             std::size_t trials, int workers = 1);

// ---------------------------------------------------------------------------
// Simulated annealing
// ---------------------------------------------------------------------------

struct AnnealingConfig {
    double initial_temperature = 0.05;
    double cooling_rate = 0.95;
    std::size_t steps_per_temperature = 200;
    double min_temperature = 1e-4;
    std::uint64_t seed = 0;
    /// Independent chains with seeds seed, seed + 1, ...; the best wins, ties to
    /// the smallest seed.
    std::size_t restarts = 1;

    void validate() const;
};

struct AnnealingStep {
    std::size_t step = 0;
    double temperature = 0.0;
    /// Objective of the chain's state after this accepted move.
    double current = 0.0;
    /// Best objective seen so far; non-decreasing.
    double best = 0.0;
};

struct AnnealingResult {
    /// Best graph seen by the winning chain.
    ProjectGraph graph;
    /// Row 0 is the starting state; then one row per accepted move. Empty if no
    /// move is feasible.
    std::vector<AnnealingStep> trace;
    double initial_objective = 0.0;
    double best_objective = 0.0;
    std::uint64_t seed = 0;
    std::size_t proposals = 0;
    std::size_t accepted = 0;
    bool feasible = false;
};

/// Rewires edges to maximise greedy robustness. A move takes a random edge (p,t)
/// and reconnects p to a random task t' outside N(p) with degree >= 2; moves that
/// would leave t without people are rejected before anything changes. Person
/// degrees are therefore preserved and no covered task is ever abandoned.
/// Restarts run on up to `workers` threads.
AnnealingResult anneal(const ProjectGraph& graph, const AnnealingConfig& config, int workers = 1);

/// One chain with the given seed; the reference for anneal.
AnnealingResult anneal_chain(const ProjectGraph& graph, const AnnealingConfig& config, std::uint64_t seed);

struct PairedDecay {
    DecayCurve original;
    DecayCurve optimized;
};

/// Greedy decay curves of two graphs over the same people and tasks.
/// Throws InvalidArgument on a shape mismatch.
PairedDecay compare_decay(const ProjectGraph& original, const ProjectGraph& optimized);

}  // namespace busfactor
