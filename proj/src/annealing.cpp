#include "busfactor/optimize.hpp"

#include <cmath>
#include <string>

#include "busfactor/errors.hpp"
#include "busfactor/parallel.hpp"
#include "busfactor/random.hpp"

namespace busfactor {
namespace {

/// Mutable chain state. Person degrees never change under the move set, so the
/// greedy removal order is fixed for the whole run.
class Chain {
public:
    explicit Chain(const ProjectGraph& graph) : graph_(graph), order_(greedy_removal_order(graph)) {
        for (Index p = 0; p < graph_.person_count(); ++p)
            for (Index t : graph_.tasks_of(p)) edges_.emplace_back(p, t);
    }

    double objective() const {
        return normalized_robustness(curve_area(decay_curve_by_index(graph_, order_)), graph_.task_count(),
                                     graph_.person_count());
    }

    /// Whether person p has at least one admissible target task.
    bool has_target(Index p) const {
        for (Index t = 0; t < graph_.task_count(); ++t)
            if (graph_.task_degree(t) >= 2 && !graph_.has_edge_at(p, t)) return true;
        return false;
    }

    bool any_feasible_move() const {
        for (Index p = 0; p < graph_.person_count(); ++p) {
            bool movable = false;
            for (Index t : graph_.tasks_of(p)) movable = movable || graph_.task_degree(t) >= 2;
            if (movable && has_target(p)) return true;
        }
        return false;
    }

    struct Move {
        std::size_t edge;
        Index person;
        Index from;
        Index to;
    };

    /// Draws a move; returns false when the drawn edge cannot be rewired. The
    /// graph is not touched in that case.
    bool propose(Rng& rng, Move& move) {
        const std::size_t k = rng.below(edges_.size());
        auto [p, t] = edges_[k];
        if (graph_.task_degree(t) < 2) return false;
        targets_.clear();
        for (Index c = 0; c < graph_.task_count(); ++c)
            if (graph_.task_degree(c) >= 2 && !graph_.has_edge_at(p, c)) targets_.push_back(c);
        if (targets_.empty()) return false;
        move = {k, p, t, targets_[rng.below(targets_.size())]};
        return true;
    }

    void apply(const Move& m) {
        graph_.remove_edge_at(m.person, m.from);
        graph_.add_edge_at(m.person, m.to);
        edges_[m.edge].second = m.to;
    }

    void revert(const Move& m) {
        graph_.remove_edge_at(m.person, m.to);
        graph_.add_edge_at(m.person, m.from);
        edges_[m.edge].second = m.from;
    }

    const ProjectGraph& graph() const { return graph_; }

private:
    ProjectGraph graph_;
    std::vector<Index> order_;
    std::vector<std::pair<Index, Index>> edges_;
    std::vector<Index> targets_;
};

}  // namespace

void AnnealingConfig::validate() const {
    if (!(initial_temperature > 0)) throw InvalidArgument("initial temperature must be positive");
    if (!(cooling_rate > 0 && cooling_rate < 1)) throw InvalidArgument("cooling rate must lie in (0, 1)");
    if (!(min_temperature > 0)) throw InvalidArgument("minimum temperature must be positive");
    if (steps_per_temperature < 1) throw InvalidArgument("steps per temperature must be positive");
    if (restarts < 1) throw InvalidArgument("restarts must be positive");
}

AnnealingResult anneal_chain(const ProjectGraph& graph, const AnnealingConfig& config, std::uint64_t seed) {
    config.validate();
    if (graph.edge_count() < 1) throw DegenerateError("annealing needs at least one edge");
    if (graph.task_count() < 2) throw DegenerateError("annealing needs at least two tasks");

    AnnealingResult result;
    result.seed = seed;
    result.graph = graph;
    Chain chain(graph);
    result.initial_objective = chain.objective();
    result.best_objective = result.initial_objective;
    if (!chain.any_feasible_move()) return result;
    result.feasible = true;

    Rng rng(seed);
    double current = result.initial_objective;
    double temperature = config.initial_temperature;
    result.trace.push_back({0, temperature, current, current});
    std::size_t step = 0;
    while (temperature >= config.min_temperature) {
        for (std::size_t s = 0; s < config.steps_per_temperature; ++s) {
            ++step;
            ++result.proposals;
            Chain::Move move{};
            if (!chain.propose(rng, move)) continue;
            chain.apply(move);
            const double candidate = chain.objective();
            const double delta = candidate - current;
            if (delta < 0 && !(rng.uniform() < std::exp(delta / temperature))) {
                chain.revert(move);
                continue;
            }
            current = candidate;
            ++result.accepted;
            if (current > result.best_objective) {
                result.best_objective = current;
                result.graph = chain.graph();
            }
            result.trace.push_back({step, temperature, current, result.best_objective});
        }
        temperature *= config.cooling_rate;
    }
    return result;
}

AnnealingResult anneal(const ProjectGraph& graph, const AnnealingConfig& config, int workers) {
    config.validate();
    std::vector<AnnealingResult> chains(config.restarts);
    parallel_for(config.restarts, workers,
                 [&](std::size_t r) { chains[r] = anneal_chain(graph, config, config.seed + r); });
    std::size_t best = 0;
    for (std::size_t r = 1; r < chains.size(); ++r)
        if (chains[r].best_objective > chains[best].best_objective) best = r;
    return std::move(chains[best]);
}

PairedDecay compare_decay(const ProjectGraph& original, const ProjectGraph& optimized) {
    if (original.person_count() != optimized.person_count() || original.task_count() != optimized.task_count())
        throw InvalidArgument("graphs differ in shape: " + std::to_string(original.person_count()) + "x" +
                              std::to_string(original.task_count()) + " vs " +
                              std::to_string(optimized.person_count()) + "x" +
                              std::to_string(optimized.task_count()));
    return {bus_factor_greedy(original).curve, bus_factor_greedy(optimized).curve};
}

}  // namespace busfactor
