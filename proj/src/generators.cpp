#include "busfactor/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "busfactor/coverage.hpp"
#include "busfactor/errors.hpp"
#include "busfactor/parallel.hpp"
#include "busfactor/robustness.hpp"

namespace busfactor {
namespace {

/// Tops up every node on one side below `min_degree` with random partners.
void repair_people(ProjectGraph& g, std::size_t min_degree, Rng& rng) {
    const std::size_t nt = g.task_count();
    for (Index p = 0; p < g.person_count(); ++p) {
        while (g.person_degree(p) < min_degree) {
            auto t = static_cast<Index>(rng.below(nt));
            if (!g.has_edge_at(p, t)) g.add_edge_at(p, t);
        }
    }
}

void repair_tasks(ProjectGraph& g, std::size_t min_degree, Rng& rng) {
    const std::size_t np = g.person_count();
    for (Index t = 0; t < g.task_count(); ++t) {
        while (g.task_degree(t) < min_degree) {
            auto p = static_cast<Index>(rng.below(np));
            if (!g.has_edge_at(p, t)) g.add_edge_at(p, t);
        }
    }
}

std::vector<Index> degree_ranking(const ProjectGraph& g) { return greedy_removal_order(g); }

// One perturbation batch at a time; `step` returns false (leaving the graph
// untouched) when the batch cannot be applied in full.

class DensifyStep {
public:
    DensifyStep(std::size_t batch, std::uint64_t seed) : batch_(batch), rng_(seed) {}

    bool operator()(ProjectGraph& g) {
        const std::size_t np = g.person_count();
        const std::size_t nt = g.task_count();
        const std::size_t pairs = np * nt;
        const std::size_t absent = pairs - g.edge_count();
        if (absent < batch_) return false;
        if (2 * absent >= pairs) {
            // Mostly empty: rejection sampling finishes quickly.
            std::size_t added = 0;
            while (added < batch_) {
                std::uint64_t k = rng_.below(pairs);
                auto p = static_cast<Index>(k / nt);
                auto t = static_cast<Index>(k % nt);
                if (g.has_edge_at(p, t)) continue;
                g.add_edge_at(p, t);
                ++added;
            }
            return true;
        }
        std::vector<std::pair<Index, Index>> candidates;
        candidates.reserve(absent);
        for (Index p = 0; p < np; ++p)
            for (Index t = 0; t < nt; ++t)
                if (!g.has_edge_at(p, t)) candidates.emplace_back(p, t);
        rng_.partial_shuffle(candidates, batch_);
        for (std::size_t i = 0; i < batch_; ++i) g.add_edge_at(candidates[i].first, candidates[i].second);
        return true;
    }

private:
    std::size_t batch_;
    Rng rng_;
};

class SparsifyStep {
public:
    SparsifyStep(std::size_t batch, std::uint64_t seed) : batch_(batch), rng_(seed) {}

    bool operator()(ProjectGraph& g) {
        if (g.edge_count() < batch_) return false;
        std::vector<std::pair<Index, Index>> edges;
        edges.reserve(g.edge_count());
        for (Index p = 0; p < g.person_count(); ++p)
            for (Index t : g.tasks_of(p)) edges.emplace_back(p, t);
        rng_.partial_shuffle(edges, batch_);
        for (std::size_t i = 0; i < batch_; ++i) g.remove_edge_at(edges[i].first, edges[i].second);
        return true;
    }

private:
    std::size_t batch_;
    Rng rng_;
};

/// Walks one random permutation of the tasks so that no task receives two
/// specialists over a whole sweep.
class SingletonStep {
public:
    SingletonStep(const ProjectGraph& g, std::size_t batch, std::uint64_t seed) : batch_(batch) {
        order_.resize(g.task_count());
        std::iota(order_.begin(), order_.end(), Index{0});
        Rng rng(seed);
        rng.partial_shuffle(order_, order_.size());
    }

    bool operator()(ProjectGraph& g) {
        if (next_ + batch_ > order_.size()) return false;
        for (std::size_t i = 0; i < batch_; ++i) {
            g.add_person();
            g.add_edge_at(static_cast<Index>(g.person_count() - 1), order_[next_++]);
        }
        return true;
    }

private:
    std::size_t batch_;
    std::vector<Index> order_;
    std::size_t next_ = 0;
};

/// Clones along the degree ranking of the graph it was constructed with.
class DuplicateStep {
public:
    DuplicateStep(const ProjectGraph& g, std::size_t batch) : batch_(batch) {
        for (Index p : degree_ranking(g)) ranking_.push_back(g.person_id(p));
    }

    bool operator()(ProjectGraph& g) {
        if (ranking_.empty()) return batch_ == 0;
        for (std::size_t i = 0; i < batch_; ++i) {
            if (next_ >= ranking_.size()) wrapped_ = true;
            g.clone_person(ranking_[next_ % ranking_.size()]);
            ++next_;
        }
        return true;
    }

    bool wrapped() const { return wrapped_; }

private:
    std::size_t batch_;
    std::vector<PersonId> ranking_;
    std::size_t next_ = 0;
    bool wrapped_ = false;
};

template <typename Step>
Checkpoints run_batches(const ProjectGraph& graph, std::size_t n_batches, Step step) {
    Checkpoints out;
    ProjectGraph current = graph;
    for (std::size_t b = 0; b < n_batches; ++b) {
        if (!step(current)) {
            out.truncated = true;
            break;
        }
        out.graphs.push_back(current);
    }
    return out;
}

struct SweepStates {
    std::vector<std::size_t> modifications;
    std::vector<ProjectGraph> graphs;
    bool truncated = false;
    bool wrapped = false;
};

template <typename Step>
void collect_states(SweepStates& states, const ProjectGraph& graph, const SweepSpec& spec, Step& step) {
    ProjectGraph current = graph;
    for (std::size_t b = 1; b <= spec.n_batches; ++b) {
        if (!step(current)) {
            states.truncated = true;
            return;
        }
        if (b % spec.checkpoint_stride == 0) {
            states.modifications.push_back(b * spec.batch_size);
            states.graphs.push_back(current);
        }
    }
}

SweepStates sweep_states(const ProjectGraph& graph, const SweepSpec& spec) {
    if (spec.batch_size == 0) throw InvalidArgument("batch size must be positive");
    if (spec.checkpoint_stride == 0) throw InvalidArgument("checkpoint stride must be positive");
    SweepStates states;
    states.modifications.push_back(0);
    states.graphs.push_back(graph);
    switch (spec.kind) {
        case PerturbationKind::Densify: {
            DensifyStep step(spec.batch_size, spec.seed);
            collect_states(states, graph, spec, step);
            break;
        }
        case PerturbationKind::Sparsify: {
            SparsifyStep step(spec.batch_size, spec.seed);
            collect_states(states, graph, spec, step);
            break;
        }
        case PerturbationKind::Singletons: {
            SingletonStep step(graph, spec.batch_size, spec.seed);
            collect_states(states, graph, spec, step);
            break;
        }
        case PerturbationKind::Duplicates: {
            DuplicateStep step(graph, spec.batch_size);
            collect_states(states, graph, spec, step);
            states.wrapped = step.wrapped();
            break;
        }
    }
    return states;
}

SweepRow evaluate(const ProjectGraph& g, std::size_t modifications, Delta delta) {
    SweepRow row;
    row.modifications = modifications;
    try {
        row.mrs = mrs_greedy(g, delta).size();
    } catch (const InfeasibleError&) {
        row.mrs.reset();
    }
    row.mcs = mcs_greedy(g, delta).size();
    row.robustness = bus_factor_greedy(g).value;
    return row;
}

}  // namespace

void GeneratorConfig::validate() const {
    if (n_people < 1 || n_tasks < 1) throw InvalidArgument("generator needs at least one person and one task");
    if (!(exponent_people > 1.0) || !(exponent_tasks > 1.0))
        throw InvalidArgument("power-law exponents must exceed 1");
    if (min_degree < 1) throw InvalidArgument("min_degree must be at least 1");
    if (min_degree > n_people || min_degree > n_tasks)
        throw InvalidArgument("min_degree " + std::to_string(min_degree) +
                              " is infeasible: exceeds the size of the opposite side");
}

nlohmann::json GeneratorConfig::to_json() const {
    return {{"n_people", n_people},
            {"n_tasks", n_tasks},
            {"exponent_people", exponent_people},
            {"exponent_tasks", exponent_tasks},
            {"min_degree", min_degree},
            {"seed", seed},
            {"wiring", "bipartite-chung-lu"},
            {"degree_support", "[min_degree, size of opposite side]"}};
}

std::vector<std::size_t> sample_truncated_powerlaw(std::size_t count, double exponent, std::size_t min_value,
                                                   std::size_t max_value, Rng& rng) {
    if (min_value < 1 || max_value < min_value) throw InvalidArgument("invalid power-law support");
    std::vector<double> cdf;
    cdf.reserve(max_value - min_value + 1);
    double total = 0.0;
    for (std::size_t k = min_value; k <= max_value; ++k) {
        total += std::pow(static_cast<double>(k), -exponent);
        cdf.push_back(total);
    }
    std::vector<std::size_t> out(count);
    for (auto& v : out) {
        double u = rng.uniform() * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        v = min_value + static_cast<std::size_t>(it - cdf.begin());
    }
    return out;
}

ProjectGraph generate_powerlaw(const GeneratorConfig& config) {
    config.validate();
    Rng rng(config.seed);
    const std::size_t np = config.n_people;
    const std::size_t nt = config.n_tasks;
    auto person_target = sample_truncated_powerlaw(np, config.exponent_people, config.min_degree, nt, rng);
    auto task_target = sample_truncated_powerlaw(nt, config.exponent_tasks, config.min_degree, np, rng);

    std::vector<double> wp(person_target.begin(), person_target.end());
    std::vector<double> wt(task_target.begin(), task_target.end());
    const double sp = std::accumulate(wp.begin(), wp.end(), 0.0);
    const double st = std::accumulate(wt.begin(), wt.end(), 0.0);
    // Scale the lighter side up so both sides promise the same number of edges.
    if (sp < st) {
        for (auto& w : wp) w *= st / sp;
    } else {
        for (auto& w : wt) w *= sp / st;
    }
    const double total = std::max(sp, st);

    ProjectGraph g = ProjectGraph::with_counts(np, nt);
    for (Index p = 0; p < np; ++p)
        for (Index t = 0; t < nt; ++t)
            if (rng.bernoulli(std::min(1.0, wp[p] * wt[t] / total))) g.add_edge_at(p, t);

    repair_people(g, config.min_degree, rng);
    repair_tasks(g, config.min_degree, rng);
    return g;
}

ProjectGraph generate_silos(const GeneratorConfig& block, std::size_t blocks) {
    block.validate();
    if (blocks < 1) throw InvalidArgument("at least one block is required");
    std::vector<Edge> edges;
    for (std::size_t b = 0; b < blocks; ++b) {
        GeneratorConfig config = block;
        config.seed = derive_seed(block.seed, b);
        const ProjectGraph part = generate_powerlaw(config);
        const std::uint64_t person_offset = b * block.n_people;
        const std::uint64_t task_offset = b * block.n_tasks;
        for (const Edge& e : part.edges())
            edges.push_back({PersonId{e.person.value + person_offset}, TaskId{e.task.value + task_offset}});
    }
    return ProjectGraph::from_edges({}, {}, edges);
}

Checkpoints densify(const ProjectGraph& graph, std::size_t batch_size, std::size_t n_batches, std::uint64_t seed) {
    if (batch_size == 0) throw InvalidArgument("batch size must be positive");
    return run_batches(graph, n_batches, DensifyStep(batch_size, seed));
}

Checkpoints sparsify(const ProjectGraph& graph, std::size_t batch_size, std::size_t n_batches,
                     std::uint64_t seed) {
    if (batch_size == 0) throw InvalidArgument("batch size must be positive");
    return run_batches(graph, n_batches, SparsifyStep(batch_size, seed));
}

ProjectGraph add_singletons(const ProjectGraph& graph, std::size_t count, std::uint64_t seed) {
    if (count > graph.task_count())
        throw InvalidArgument("cannot add " + std::to_string(count) + " singletons to " +
                              std::to_string(graph.task_count()) + " tasks");
    ProjectGraph out = graph;
    SingletonStep step(graph, count, seed);
    step(out);
    return out;
}

DuplicateResult add_duplicates(const ProjectGraph& graph, std::size_t count) {
    DuplicateResult out{graph, false};
    if (count == 0) return out;
    if (graph.person_count() == 0) throw InvalidArgument("no people to duplicate");
    DuplicateStep step(graph, count);
    step(out.graph);
    out.wrapped = step.wrapped();
    return out;
}

PerturbationKind parse_perturbation(std::string_view name) {
    if (name == "densify") return PerturbationKind::Densify;
    if (name == "sparsify") return PerturbationKind::Sparsify;
    if (name == "singletons") return PerturbationKind::Singletons;
    if (name == "duplicates") return PerturbationKind::Duplicates;
    throw InvalidArgument("unknown perturbation '" + std::string(name) + "'");
}

std::string_view to_string(PerturbationKind kind) {
    switch (kind) {
        case PerturbationKind::Densify: return "densify";
        case PerturbationKind::Sparsify: return "sparsify";
        case PerturbationKind::Singletons: return "singletons";
        case PerturbationKind::Duplicates: return "duplicates";
    }
    return "unknown";
}

SweepTable run_sweep(const ProjectGraph& graph, const SweepSpec& spec, Delta delta, int workers) {
    SweepStates states = sweep_states(graph, spec);
    SweepTable table;
    table.truncated = states.truncated;
    table.wrapped = states.wrapped;
    table.rows.resize(states.graphs.size());
    parallel_for(states.graphs.size(), workers, [&](std::size_t k) {
        table.rows[k] = evaluate(states.graphs[k], states.modifications[k], delta);
    });
    return table;
}

SweepTable run_sweep_serial(const ProjectGraph& graph, const SweepSpec& spec, Delta delta) {
    SweepStates states = sweep_states(graph, spec);
    SweepTable table;
    table.truncated = states.truncated;
    table.wrapped = states.wrapped;
    for (std::size_t k = 0; k < states.graphs.size(); ++k)
        table.rows.push_back(evaluate(states.graphs[k], states.modifications[k], delta));
    return table;
}

}  // namespace busfactor
