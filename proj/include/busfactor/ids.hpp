#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

namespace busfactor {

/// Dense position of a node inside a ProjectGraph. Not stable across mutations
/// that add nodes, but ordered identically to the external ids.
using Index = std::uint32_t;

struct PersonId {
    std::uint64_t value = 0;
    auto operator<=>(const PersonId&) const = default;
};

struct TaskId {
    std::uint64_t value = 0;
    auto operator<=>(const TaskId&) const = default;
};

inline std::string to_string(PersonId id) { return "p" + std::to_string(id.value); }
inline std::string to_string(TaskId id) { return "t" + std::to_string(id.value); }

inline std::ostream& operator<<(std::ostream& os, PersonId id) { return os << to_string(id); }
inline std::ostream& operator<<(std::ostream& os, TaskId id) { return os << to_string(id); }

struct Edge {
    PersonId person;
    TaskId task;
    auto operator<=>(const Edge&) const = default;
};

}  // namespace busfactor

template <>
struct std::hash<busfactor::PersonId> {
    std::size_t operator()(busfactor::PersonId id) const noexcept {
        return std::hash<std::uint64_t>{}(id.value);
    }
};

template <>
struct std::hash<busfactor::TaskId> {
    std::size_t operator()(busfactor::TaskId id) const noexcept {
        return std::hash<std::uint64_t>{}(id.value);
    }
};
