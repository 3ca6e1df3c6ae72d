#include "busfactor/graph_io.hpp"

#include <charconv>
#include <istream>
#include <iterator>
#include <set>
#include <vector>

#include "busfactor/errors.hpp"

namespace busfactor {
namespace {

std::uint64_t parse_prefixed(std::string_view token, char prefix, std::size_t line) {
    if (token.size() < 2 || token.front() != prefix)
        throw ParseError("expected " + std::string(1, prefix) + "<digits>, got '" +
                             std::string(token) + "'",
                         line);
    std::uint64_t value = 0;
    const char* first = token.data() + 1;
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError("bad identifier '" + std::string(token) + "'", line);
    return value;
}

struct Collected {
    std::vector<PersonId> people;
    std::vector<TaskId> tasks;
    std::vector<Edge> edges;
    std::set<Edge> seen;
};

void add_edge_checked(Collected& c, Edge e, std::size_t line) {
    if (!c.seen.insert(e).second)
        throw ParseError("duplicate edge (" + to_string(e.person) + "," + to_string(e.task) + ")",
                         line);
    c.edges.push_back(e);
}

ProjectGraph load_csv(std::string_view text) {
    Collected c;
    bool header_seen = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != "person,task") throw ParseError("expected header 'person,task'", line_no);
            header_seen = true;
            continue;
        }
        std::size_t comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
            throw ParseError("expected exactly two fields", line_no);
        std::string_view left = line.substr(0, comma);
        std::string_view right = line.substr(comma + 1);
        if (left.empty() && right.empty()) throw ParseError("empty row", line_no);
        std::optional<PersonId> person;
        std::optional<TaskId> task;
        if (!left.empty()) person = PersonId{parse_prefixed(left, 'p', line_no)};
        if (!right.empty()) task = TaskId{parse_prefixed(right, 't', line_no)};
        if (person && task) {
            add_edge_checked(c, {*person, *task}, line_no);
        } else if (person) {
            c.people.push_back(*person);
        } else {
            c.tasks.push_back(*task);
        }
    }
    if (!header_seen) throw ParseError("missing header 'person,task'");
    return ProjectGraph::from_edges(c.people, c.tasks, c.edges);
}

std::string string_at(const nlohmann::json& value, const char* what) {
    if (!value.is_string()) throw ParseError(std::string(what) + " entries must be strings");
    return value.get<std::string>();
}

ProjectGraph load_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("top-level JSON value must be an object");
    Collected c;
    auto array_member = [&doc](const char* key) -> const nlohmann::json* {
        auto it = doc.find(key);
        if (it == doc.end()) return nullptr;
        if (!it->is_array()) throw ParseError(std::string("'") + key + "' must be an array");
        return &*it;
    };
    if (const auto* people = array_member("people"))
        for (const auto& v : *people)
            c.people.push_back(PersonId{parse_prefixed(string_at(v, "people"), 'p', 0)});
    if (const auto* tasks = array_member("tasks"))
        for (const auto& v : *tasks)
            c.tasks.push_back(TaskId{parse_prefixed(string_at(v, "tasks"), 't', 0)});
    if (const auto* edges = array_member("edges")) {
        for (const auto& v : *edges) {
            if (!v.is_array() || v.size() != 2) throw ParseError("edges must be [person, task] pairs");
            add_edge_checked(c,
                             {PersonId{parse_prefixed(string_at(v[0], "edges"), 'p', 0)},
                              TaskId{parse_prefixed(string_at(v[1], "edges"), 't', 0)}},
                             0);
        }
    }
    return ProjectGraph::from_edges(c.people, c.tasks, c.edges);
}

}  // namespace

EdgeListFormat parse_format(std::string_view name) {
    if (name == "csv") return EdgeListFormat::Csv;
    if (name == "json") return EdgeListFormat::Json;
    throw InvalidArgument("unknown format '" + std::string(name) + "'");
}

PersonId parse_person_id(std::string_view token) { return PersonId{parse_prefixed(token, 'p', 0)}; }
TaskId parse_task_id(std::string_view token) { return TaskId{parse_prefixed(token, 't', 0)}; }

ProjectGraph load_edge_list(std::string_view text, EdgeListFormat format) {
    return format == EdgeListFormat::Csv ? load_csv(text) : load_json(text);
}

ProjectGraph load_edge_list(std::istream& in, EdgeListFormat format) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return load_edge_list(text, format);
}

std::string save_edge_list(const ProjectGraph& graph, EdgeListFormat format,
                           const std::optional<nlohmann::json>& manifest) {
    if (format == EdgeListFormat::Json) {
        nlohmann::json doc;
        auto& people = doc["people"] = nlohmann::json::array();
        auto& tasks = doc["tasks"] = nlohmann::json::array();
        auto& edges = doc["edges"] = nlohmann::json::array();
        for (PersonId p : graph.people()) people.push_back(to_string(p));
        for (TaskId t : graph.tasks()) tasks.push_back(to_string(t));
        for (const Edge& e : graph.edges())
            edges.push_back(nlohmann::json::array({to_string(e.person), to_string(e.task)}));
        if (manifest) doc["manifest"] = *manifest;
        return doc.dump(2) + "\n";
    }

    std::string out;
    if (manifest) out += "# manifest: " + manifest->dump() + "\n";
    out += "person,task\n";
    for (Index p = 0; p < graph.person_count(); ++p) {
        const std::string pid = to_string(graph.person_id(p));
        if (graph.person_degree(p) == 0) {
            out += pid + ",\n";
            continue;
        }
        for (Index t : graph.tasks_of(p)) out += pid + "," + to_string(graph.task_id(t)) + "\n";
    }
    for (Index t = 0; t < graph.task_count(); ++t)
        if (graph.task_degree(t) == 0) out += "," + to_string(graph.task_id(t)) + "\n";
    return out;
}

}  // namespace busfactor
