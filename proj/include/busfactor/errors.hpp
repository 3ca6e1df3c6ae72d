#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace busfactor {

/// Malformed input data (edge lists, config files).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A request that violates a documented precondition (unknown id, bad config value).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The coverage target cannot be met even keeping every person.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The graph is too small for the measure to be defined (no tasks, no people).
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exhaustive oracle was asked to run beyond its size guard.
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A post-condition check failed; indicates a bug rather than bad input.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace busfactor
