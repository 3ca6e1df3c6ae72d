#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "busfactor/delta.hpp"
#include "busfactor/graph.hpp"
#include "busfactor/random.hpp"

namespace busfactor {

/// Synthetic project shape. Defaults are the desk-scale baseline.
struct GeneratorConfig {
    std::size_t n_people = 750;
    std::size_t n_tasks = 1000;
    double exponent_people = 2.5;
    double exponent_tasks = 2.5;
    std::size_t min_degree = 1;
    std::uint64_t seed = 42;

    /// Throws InvalidArgument on out-of-range fields.
    void validate() const;
    nlohmann::json to_json() const;
};

/// `count` i.i.d. draws from P(k) ~ k^-exponent on [min_value, max_value].
std::vector<std::size_t> sample_truncated_powerlaw(std::size_t count, double exponent, std::size_t min_value,
                                                   std::size_t max_value, Rng& rng);

/// Power-law target degrees on both sides, balanced so their sums agree, wired by
/// bipartite Chung-Lu (edge probability min(1, w_p w_t / W)). A repair pass then
/// links every node below min_degree to random partners. Deterministic per seed.
ProjectGraph generate_powerlaw(const GeneratorConfig& config);

/// `blocks` disjoint power-law blocks, each shaped by `block`. Block b uses a seed
/// derived from (block.seed, b) and ids continue where block b - 1 ended.
ProjectGraph generate_silos(const GeneratorConfig& block, std::size_t blocks);

/// Successive perturbation states. `truncated` is set when a batch could not be
/// applied in full; that batch is then not applied at all.
struct Checkpoints {
    std::vector<ProjectGraph> graphs;
    bool truncated = false;
};

/// Adds `batch_size` uniformly random absent edges per batch.
Checkpoints densify(const ProjectGraph& graph, std::size_t batch_size, std::size_t n_batches, std::uint64_t seed);

/// Removes `batch_size` uniformly random existing edges per batch.
Checkpoints sparsify(const ProjectGraph& graph, std::size_t batch_size, std::size_t n_batches,
                     std::uint64_t seed);

/// Adds `count` degree-1 people on distinct, uniformly chosen tasks.
/// Throws InvalidArgument when count exceeds the number of tasks.
ProjectGraph add_singletons(const ProjectGraph& graph, std::size_t count, std::uint64_t seed);

struct DuplicateResult {
    ProjectGraph graph;
    /// More clones were requested than there are people; cloning restarted from
    /// the top of the degree ranking.
    bool wrapped = false;
};

/// Clones people in decreasing order of degree (ties to the smallest id).
DuplicateResult add_duplicates(const ProjectGraph& graph, std::size_t count);

enum class PerturbationKind { Densify, Sparsify, Singletons, Duplicates };

PerturbationKind parse_perturbation(std::string_view name);
std::string_view to_string(PerturbationKind kind);

struct SweepSpec {
    PerturbationKind kind = PerturbationKind::Densify;
    std::size_t batch_size = 100;
    std::size_t n_batches = 50;
    std::uint64_t seed = 0;
    /// Metrics are evaluated after every `checkpoint_stride`-th batch.
    std::size_t checkpoint_stride = 1;
};

struct SweepRow {
    std::size_t modifications = 0;
    /// Empty when the coverage target became unreachable.
    std::optional<std::size_t> mrs;
    std::size_t mcs = 0;
    double robustness = 0.0;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    bool truncated = false;
    bool wrapped = false;
};

/// Applies the perturbation batch by batch and evaluates greedy MRS, greedy MCS
/// and greedy robustness at the unperturbed graph and at every checkpoint.
/// Checkpoint evaluation is spread over `workers` threads.
SweepTable run_sweep(const ProjectGraph& graph, const SweepSpec& spec, Delta delta, int workers = 1);

/// Single-threaded reference for run_sweep.
SweepTable run_sweep_serial(const ProjectGraph& graph, const SweepSpec& spec, Delta delta);

}  // namespace busfactor
