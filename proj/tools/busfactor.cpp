#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "busfactor/coverage.hpp"
#include "busfactor/errors.hpp"
#include "busfactor/generators.hpp"
#include "busfactor/graph_io.hpp"
#include "busfactor/optimize.hpp"
#include "busfactor/report.hpp"
#include "busfactor/robustness.hpp"
#include "json_config.hpp"

namespace bf = busfactor;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kInputError = 1, kInfeasible = 2, kInternal = 3 };

/// Error opening or reading a file named on the command line.
struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw FileError("cannot write '" + path + "'");
}

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bf::EdgeListFormat format_for(const std::string& path, const std::string& flag) {
    if (!flag.empty()) return bf::parse_format(flag);
    return ends_with(path, ".json") ? bf::EdgeListFormat::Json : bf::EdgeListFormat::Csv;
}

struct Input {
    bf::ProjectGraph graph;
    std::string digest;
    std::optional<json> source_manifest;
};

/// Manifest of the run that produced an input file, if it carries one.
std::optional<json> embedded_manifest(const std::string& text, bf::EdgeListFormat format) {
    if (format == bf::EdgeListFormat::Json) {
        json doc = json::parse(text, nullptr, false);
        if (doc.is_object() && doc.contains("manifest")) return doc["manifest"];
        return std::nullopt;
    }
    constexpr std::string_view prefix = "# manifest: ";
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line) && line.starts_with("#")) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.starts_with(prefix)) continue;
        json m = json::parse(line.substr(prefix.size()), nullptr, false);
        if (!m.is_discarded()) return m;
    }
    return std::nullopt;
}

Input load_input(const std::string& path, const std::string& format_flag) {
    const std::string text = read_file(path);
    const auto format = format_for(path, format_flag);
    return {bf::load_edge_list(text, format), bf::content_digest(text), embedded_manifest(text, format)};
}

json manifest_for(std::string_view command, json parameters, const Input* input) {
    if (input && input->source_manifest) parameters["source_manifest"] = *input->source_manifest;
    return bf::make_manifest(command, std::move(parameters), input ? input->digest : "");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Options shared by every subcommand.
struct Common {
    int workers = 1;
    std::string delta_text = "0.5";
    std::string format;
};

CLI::Validator delta_validator() {
    return CLI::Validator(
        [](std::string& value) {
            try {
                bf::Delta::parse(value);
            } catch (const std::exception& e) {
                return std::string(e.what());
            }
            return std::string();
        },
        "DECIMAL in (0,1]", "delta");
}

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& description, Common& common,
                      bool with_delta, std::uint64_t* seed) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->fallthrough();
    sub->add_option("--workers", common.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--format", common.format, "Graph file format (default: from the file extension)")
        ->check(CLI::IsMember({"csv", "json"}));
    if (seed) sub->add_option("--seed", *seed, "Random seed (64-bit)")->capture_default_str();
    if (with_delta)
        sub->add_option("--delta", common.delta_text, "Coverage threshold in (0,1]")
            ->check(delta_validator())
            ->capture_default_str();
    return sub;
}

// ---------------------------------------------------------------------------

struct AnalyzeArgs {
    std::string input;
    std::string output = "-";
    std::string decay_output;
    std::string order = "static";
    bool exact = false;
};

int run_analyze(const AnalyzeArgs& a, const Common& c) {
    Input in = load_input(a.input, c.format);
    const bf::Delta delta = bf::Delta::parse(c.delta_text);
    const auto order = a.order == "adaptive" ? bf::GreedyOrder::Adaptive : bf::GreedyOrder::Static;

    const bf::CoverageReport coverage = bf::coverage_report(in.graph, delta);
    const bf::RobustnessResult robustness = bf::bus_factor_greedy(in.graph, order);

    json params{{"delta", delta.to_string()}, {"order", a.order}, {"exact", a.exact}};
    json manifest = manifest_for("analyze", params, &in);

    std::string decay_path = a.decay_output;
    if (decay_path.empty() && a.output != "-") decay_path = a.output + ".decay.csv";

    json report;
    report["manifest"] = manifest;
    report["graph"] = {{"people", in.graph.person_count()},
                       {"tasks", in.graph.task_count()},
                       {"edges", in.graph.edge_count()}};
    report["coverage"] = bf::to_json(coverage);
    report["robustness"] = bf::to_json(robustness);
    report["robustness"]["method"] = "greedy-" + a.order;
    if (a.exact) {
        bf::RobustnessResult exact = bf::bus_factor_exact(in.graph, c.workers);
        report["exact"] = {{"mrs_set", bf::ids_json(bf::mrs_exact(in.graph, delta))},
                           {"mcs_set", bf::ids_json(bf::mcs_exact(in.graph, delta))},
                           {"robustness", bf::to_json(exact)}};
    }
    if (!decay_path.empty()) report["decay_curve_path"] = decay_path;

    if (!decay_path.empty()) write_file(decay_path, bf::manifest_comment(manifest) + bf::decay_csv(robustness));
    write_file(a.output, dump(report));
    return kOk;
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
    std::string output;
    bf::GeneratorConfig config;
    std::size_t blocks = 1;
    std::uint64_t seed = 42;
};

int run_generate(GenerateArgs a, const Common& c) {
    a.config.seed = a.seed;
    bf::ProjectGraph g = a.blocks == 1 ? bf::generate_powerlaw(a.config) : bf::generate_silos(a.config, a.blocks);
    json params = a.config.to_json();
    params["blocks"] = a.blocks;
    json manifest = manifest_for("generate", params, nullptr);
    write_file(a.output, bf::save_edge_list(g, format_for(a.output, c.format), manifest));
    return kOk;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
    std::string input;
    std::string output = "-";
    std::string kind;
    std::size_t batch_size = 100;
    std::size_t batches = 50;
    std::size_t stride = 1;
    std::uint64_t seed = 0;
};

int run_sweep(const SweepArgs& a, const Common& c) {
    Input in = load_input(a.input, c.format);
    const bf::Delta delta = bf::Delta::parse(c.delta_text);
    bf::SweepSpec spec{bf::parse_perturbation(a.kind), a.batch_size, a.batches, a.seed, a.stride};
    bf::SweepTable table = bf::run_sweep(in.graph, spec, delta, c.workers);
    json params{{"kind", a.kind},         {"batch_size", a.batch_size}, {"batches", a.batches},
                {"stride", a.stride},     {"seed", a.seed},             {"delta", delta.to_string()}};
    write_file(a.output, bf::manifest_comment(manifest_for("sweep", params, &in)) + bf::sweep_csv(table));
    return kOk;
}

// ---------------------------------------------------------------------------

struct NullTestArgs {
    std::string input;
    std::string output = "-";
    std::size_t samples = 1000;
    std::size_t swaps_per_edge = 10;
    std::size_t calibrate = 0;
    bool include_null_values = false;
    std::uint64_t seed = 0;
};

int run_nulltest(const NullTestArgs& a, const Common& c) {
    Input in = load_input(a.input, c.format);
    bf::NullModelConfig cfg{a.samples, a.swaps_per_edge, a.seed};
    bf::PermutationTestResult result = bf::permutation_test(in.graph, cfg, c.workers);

    json params{{"samples", a.samples},
                {"swaps_per_edge", a.swaps_per_edge},
                {"seed", a.seed},
                {"calibrate", a.calibrate},
                {"include_null_values", a.include_null_values},
                {"estimator", "greedy-static"},
                {"tail", "lower"}};
    json out;
    out["manifest"] = manifest_for("nulltest", params, &in);
    out["test"] = bf::to_json(result, a.include_null_values);
    if (a.calibrate > 0) {
        bf::CalibrationResult cal = bf::calibrate_permutation_test(in.graph, cfg, a.calibrate, c.workers);
        out["calibration"] = {{"trials", a.calibrate},
                              {"ks_statistic", cal.ks_statistic},
                              {"ks_p_value", cal.ks_p_value},
                              {"p_values", cal.p_values}};
    }
    write_file(a.output, dump(out));
    return kOk;
}

// ---------------------------------------------------------------------------

struct OptimizeArgs {
    std::string input;
    std::string prefix;
    bf::AnnealingConfig config;
    std::uint64_t seed = 0;
};

int run_optimize(OptimizeArgs a, const Common& c) {
    Input in = load_input(a.input, c.format);
    a.config.seed = a.seed;
    bf::AnnealingResult result = bf::anneal(in.graph, a.config, c.workers);

    if (result.graph.person_degrees() != in.graph.person_degrees())
        throw bf::InvariantViolation("annealing changed a person's degree");
    const auto before = in.graph.task_degrees();
    const auto after = result.graph.task_degrees();
    for (std::size_t t = 0; t < before.size(); ++t)
        if (before[t] > 0 && after[t] == 0) throw bf::InvariantViolation("annealing abandoned a task");

    json params{{"initial_temperature", a.config.initial_temperature},
                {"cooling_rate", a.config.cooling_rate},
                {"steps_per_temperature", a.config.steps_per_temperature},
                {"min_temperature", a.config.min_temperature},
                {"restarts", a.config.restarts},
                {"seed", a.seed}};
    json manifest = manifest_for("optimize", params, &in);
    json summary{{"initial_objective", result.initial_objective},
                 {"best_objective", result.best_objective},
                 {"winning_seed", result.seed},
                 {"proposals", result.proposals},
                 {"accepted", result.accepted},
                 {"feasible", result.feasible}};
    json graph_manifest = manifest;
    graph_manifest["result"] = summary;

    const auto fmt = format_for(a.prefix + (c.format == "json" ? ".json" : ".csv"), c.format);
    const std::string graph_path = a.prefix + (fmt == bf::EdgeListFormat::Json ? ".graph.json" : ".graph.csv");
    write_file(graph_path, bf::save_edge_list(result.graph, fmt, graph_manifest));
    write_file(a.prefix + ".trace.csv", bf::manifest_comment(manifest) + bf::trace_csv(result));
    write_file(a.prefix + ".decay.csv",
               bf::manifest_comment(manifest) + bf::paired_decay_csv(bf::compare_decay(in.graph, result.graph)));
    std::cout << summary.dump() << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------

struct DecayArgs {
    std::string input;
    std::string output = "-";
    std::string order = "static";
    std::vector<std::string> sequence;
};

int run_decay(const DecayArgs& a, const Common& c) {
    Input in = load_input(a.input, c.format);
    bf::RobustnessResult result;
    std::string method = a.order;
    if (!a.sequence.empty()) {
        method = "sequence";
        for (const std::string& token : a.sequence) result.sequence.push_back(bf::parse_person_id(token));
        result.curve = bf::decay_curve(in.graph, result.sequence);
        result.value = bf::robustness(in.graph, result.sequence);
    } else if (a.order == "exact") {
        result = bf::bus_factor_exact(in.graph, c.workers);
    } else {
        result = bf::bus_factor_greedy(in.graph,
                                       a.order == "adaptive" ? bf::GreedyOrder::Adaptive : bf::GreedyOrder::Static);
    }
    json params{{"method", method}};
    if (!a.sequence.empty()) params["sequence"] = a.sequence;
    std::string text = bf::manifest_comment(manifest_for("decay", params, &in));
    text += "# robustness: " + bf::format_double(result.value) + "\n";
    text += bf::decay_csv(result);
    write_file(a.output, text);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bus factor analysis of person-task bipartite graphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(bf::kToolVersion));
    app.set_config("--config", "", "JSON file with option values (command-line flags take precedence)");
    app.config_formatter(std::make_shared<busfactor::cli::JsonConfig>(&app));

    Common common;

    AnalyzeArgs analyze;
    auto* cmd_analyze =
        add_command(app, "analyze", "Coverage measures, greedy robustness and decay curve", common, true, nullptr);
    cmd_analyze->add_option("--input", analyze.input, "Edge-list file")->required();
    cmd_analyze->add_option("--output", analyze.output, "JSON report ('-' for stdout)")->capture_default_str();
    cmd_analyze->add_option("--decay-output", analyze.decay_output,
                            "Decay curve CSV (default: <output>.decay.csv)");
    cmd_analyze->add_option("--order", analyze.order, "Greedy removal order")
        ->check(CLI::IsMember({"static", "adaptive"}))
        ->capture_default_str();
    cmd_analyze->add_flag("--exact", analyze.exact, "Also run the exhaustive oracles (small graphs only)");

    GenerateArgs generate;
    auto* cmd_generate =
        add_command(app, "generate", "Synthetic power-law project graph", common, false, &generate.seed);
    cmd_generate->add_option("--output", generate.output, "Graph file")->required();
    cmd_generate->add_option("--people", generate.config.n_people)->capture_default_str();
    cmd_generate->add_option("--tasks", generate.config.n_tasks)->capture_default_str();
    cmd_generate->add_option("--exponent-people", generate.config.exponent_people)->capture_default_str();
    cmd_generate->add_option("--exponent-tasks", generate.config.exponent_tasks)->capture_default_str();
    cmd_generate->add_option("--min-degree", generate.config.min_degree)->capture_default_str();
    cmd_generate->add_option("--blocks", generate.blocks, "Disjoint blocks of the given shape")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    SweepArgs sweep;
    auto* cmd_sweep = add_command(app, "sweep", "Perturbation sweep table", common, true, &sweep.seed);
    cmd_sweep->add_option("--input", sweep.input, "Edge-list file")->required();
    cmd_sweep->add_option("--output", sweep.output, "CSV table ('-' for stdout)")->capture_default_str();
    cmd_sweep->add_option("--kind", sweep.kind, "Perturbation")
        ->required()
        ->check(CLI::IsMember({"densify", "sparsify", "singletons", "duplicates"}));
    cmd_sweep->add_option("--batch-size", sweep.batch_size)->check(CLI::PositiveNumber)->capture_default_str();
    cmd_sweep->add_option("--batches", sweep.batches)->capture_default_str();
    cmd_sweep->add_option("--stride", sweep.stride, "Evaluate every N-th batch")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    NullTestArgs nulltest;
    auto* cmd_null = add_command(app, "nulltest", "Degree-preserving permutation test", common, false, &nulltest.seed);
    cmd_null->add_option("--input", nulltest.input, "Edge-list file")->required();
    cmd_null->add_option("--output", nulltest.output, "JSON result ('-' for stdout)")->capture_default_str();
    cmd_null->add_option("--samples", nulltest.samples)->check(CLI::PositiveNumber)->capture_default_str();
    cmd_null->add_option("--swaps-per-edge", nulltest.swaps_per_edge)->capture_default_str();
    cmd_null->add_option("--calibrate", nulltest.calibrate,
                         "Also run N calibration tests with null-drawn observations");
    cmd_null->add_flag("--include-null-values", nulltest.include_null_values);

    OptimizeArgs optimize;
    auto* cmd_opt = add_command(app, "optimize", "Simulated-annealing rewiring", common, false, &optimize.seed);
    cmd_opt->add_option("--input", optimize.input, "Edge-list file")->required();
    cmd_opt->add_option("--output-prefix", optimize.prefix,
                        "Writes <prefix>.graph.<fmt>, <prefix>.trace.csv, <prefix>.decay.csv")
        ->required();
    cmd_opt->add_option("--initial-temperature", optimize.config.initial_temperature)->capture_default_str();
    cmd_opt->add_option("--cooling-rate", optimize.config.cooling_rate)->capture_default_str();
    cmd_opt->add_option("--steps-per-temperature", optimize.config.steps_per_temperature)->capture_default_str();
    cmd_opt->add_option("--min-temperature", optimize.config.min_temperature)->capture_default_str();
    cmd_opt->add_option("--restarts", optimize.config.restarts)->check(CLI::PositiveNumber)->capture_default_str();

    DecayArgs decay;
    auto* cmd_decay = add_command(app, "decay", "Decay curve for a removal order", common, false, nullptr);
    cmd_decay->add_option("--input", decay.input, "Edge-list file")->required();
    cmd_decay->add_option("--output", decay.output, "CSV ('-' for stdout)")->capture_default_str();
    cmd_decay->add_option("--order", decay.order)
        ->check(CLI::IsMember({"static", "adaptive", "exact"}))
        ->capture_default_str();
    cmd_decay->add_option("--sequence", decay.sequence, "Explicit removal sequence, e.g. p3,p1,p2")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (cmd_analyze->parsed()) return run_analyze(analyze, common);
        if (cmd_generate->parsed()) return run_generate(generate, common);
        if (cmd_sweep->parsed()) return run_sweep(sweep, common);
        if (cmd_null->parsed()) return run_nulltest(nulltest, common);
        if (cmd_opt->parsed()) return run_optimize(optimize, common);
        if (cmd_decay->parsed()) return run_decay(decay, common);
    } catch (const bf::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const bf::DegenerateError& e) {
        std::cerr << "degenerate: " << e.what() << "\n";
        return kInfeasible;
    } catch (const bf::InvariantViolation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const bf::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kInputError;
    } catch (const bf::InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kInputError;
    } catch (const bf::GuardError& e) {
        std::cerr << "too large: " << e.what() << "\n";
        return kInputError;
    } catch (const FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
