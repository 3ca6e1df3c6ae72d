#include "busfactor/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace busfactor {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string content_digest(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

nlohmann::json make_manifest(std::string_view command, nlohmann::json parameters, std::string_view input_digest) {
    nlohmann::json m;
    m["tool"] = "busfactor";
    m["version"] = std::string(kToolVersion);
    m["command"] = std::string(command);
    m["parameters"] = std::move(parameters);
    if (!input_digest.empty()) m["input_digest"] = "fnv1a64:" + std::string(input_digest);
    return m;
}

std::string manifest_comment(const nlohmann::json& manifest) { return "# manifest: " + manifest.dump() + "\n"; }

nlohmann::json ids_json(std::span<const PersonId> ids, bool sort) {
    std::vector<PersonId> v(ids.begin(), ids.end());
    if (sort) std::sort(v.begin(), v.end());
    auto out = nlohmann::json::array();
    for (PersonId id : v) out.push_back(to_string(id));
    return out;
}

nlohmann::json to_json(const CoverageReport& report) {
    return {{"delta", report.delta.value()},
            {"mrs_size", report.mrs_set.size()},
            {"mcs_size", report.mcs_set.size()},
            {"z_best", report.z_best},
            {"z_worst", report.z_worst},
            {"mrs_set", ids_json(report.mrs_set)},
            {"mcs_set", ids_json(report.mcs_set)}};
}

nlohmann::json to_json(const RobustnessResult& result) {
    return {{"value", result.value}, {"sequence", ids_json(result.sequence, false)}, {"curve", result.curve}};
}

std::string decay_csv(const RobustnessResult& result) {
    std::string out = "step,removed_person,tau\n";
    for (std::size_t i = 0; i < result.curve.size(); ++i) {
        out += std::to_string(i) + ",";
        if (i > 0) out += to_string(result.sequence[i - 1]);
        out += "," + std::to_string(result.curve[i]) + "\n";
    }
    return out;
}

std::string sweep_csv(const SweepTable& table) {
    std::string out;
    if (table.truncated) out += "# truncated: perturbation stopped early, graph exhausted\n";
    if (table.wrapped) out += "# wrapped: more clones requested than people, ranking restarted\n";
    out += "modifications,mrs,mcs,robustness\n";
    for (const SweepRow& row : table.rows) {
        out += std::to_string(row.modifications) + ",";
        out += row.mrs ? std::to_string(*row.mrs) : "NA";
        out += "," + std::to_string(row.mcs) + "," + format_double(row.robustness) + "\n";
    }
    return out;
}

nlohmann::json to_json(const PermutationTestResult& result, bool include_null_values) {
    nlohmann::json j;
    j["observed"] = result.observed;
    j["p_value"] = result.p_value;
    j["n_samples"] = result.null_values.size();
    if (!result.null_values.empty()) {
        std::vector<double> v = result.null_values;
        std::sort(v.begin(), v.end());
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean);
        var = v.size() > 1 ? var / static_cast<double>(v.size() - 1) : 0.0;
        const std::size_t mid = v.size() / 2;
        const double median = v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
        j["null_summary"] = {{"min", v.front()},
                             {"max", v.back()},
                             {"mean", mean},
                             {"std", std::sqrt(var)},
                             {"median", median}};
    }
    if (include_null_values) j["null_values"] = result.null_values;
    return j;
}

std::string trace_csv(const AnnealingResult& result) {
    std::string out = "step,temperature,objective\n";
    for (const AnnealingStep& s : result.trace)
        out += std::to_string(s.step) + "," + format_double(s.temperature) + "," + format_double(s.best) + "\n";
    return out;
}

std::string paired_decay_csv(const PairedDecay& paired) {
    std::string out = "step,tau_original,tau_optimized\n";
    for (std::size_t i = 0; i < paired.original.size(); ++i)
        out += std::to_string(i) + "," + std::to_string(paired.original[i]) + "," +
               std::to_string(paired.optimized[i]) + "\n";
    return out;
}

}  // namespace busfactor
