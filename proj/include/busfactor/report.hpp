#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "busfactor/coverage.hpp"
#include "busfactor/generators.hpp"
#include "busfactor/optimize.hpp"
#include "busfactor/robustness.hpp"

namespace busfactor {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// %.17g: enough digits to round-trip any double.
std::string format_double(double value);

/// 64-bit FNV-1a of `bytes`, as 16 lowercase hex digits.
std::string content_digest(std::string_view bytes);

/// Provenance block embedded in every output. Holds only what determines the
/// result (no paths, timestamps or worker counts), so reruns are byte-identical.
nlohmann::json make_manifest(std::string_view command, nlohmann::json parameters, std::string_view input_digest);

/// Renders `manifest` as a leading CSV comment line.
std::string manifest_comment(const nlohmann::json& manifest);

nlohmann::json ids_json(std::span<const PersonId> ids, bool sort = true);

nlohmann::json to_json(const CoverageReport& report);
nlohmann::json to_json(const RobustnessResult& result);

/// `step,removed_person,tau`; step 0 has an empty removed_person.
std::string decay_csv(const RobustnessResult& result);

/// `modifications,mrs,mcs,robustness`; an unreachable coverage target prints NA.
std::string sweep_csv(const SweepTable& table);

nlohmann::json to_json(const PermutationTestResult& result, bool include_null_values);

/// `step,temperature,objective` with the best objective seen so far.
std::string trace_csv(const AnnealingResult& result);

/// `step,tau_original,tau_optimized`.
std::string paired_decay_csv(const PairedDecay& paired);

}  // namespace busfactor
