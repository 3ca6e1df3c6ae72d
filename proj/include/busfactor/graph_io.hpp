#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "busfactor/graph.hpp"

namespace busfactor {

enum class EdgeListFormat { Csv, Json };

/// "csv" / "json"; throws InvalidArgument otherwise.
EdgeListFormat parse_format(std::string_view name);

/// Parses "p<digits>" / "t<digits>". Throws ParseError naming the offending token.
PersonId parse_person_id(std::string_view token);
TaskId parse_task_id(std::string_view token);

/// CSV: header `person,task`, one `p<id>,t<id>` row per edge, `p<id>,` and `,t<id>`
/// rows declare isolated nodes, lines starting with '#' are comments.
/// JSON: {"people": [...], "tasks": [...], "edges": [["p1","t1"], ...]}.
ProjectGraph load_edge_list(std::string_view text, EdgeListFormat format);
ProjectGraph load_edge_list(std::istream& in, EdgeListFormat format);

/// Canonical serialization: rows ordered by (person, task). Degree-0 people are
/// written in person order as `p<id>,`, degree-0 tasks trail as `,t<id>`.
/// A manifest, if given, becomes a leading `# manifest: ...` comment (CSV) or a
/// "manifest" member (JSON).
std::string save_edge_list(const ProjectGraph& graph, EdgeListFormat format,
                           const std::optional<nlohmann::json>& manifest = std::nullopt);

}  // namespace busfactor
