#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace distmod {

/// Input violates a documented precondition (bad parameter, inconsistent
/// dimensions, negative multiplicity, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// The superposed field at a node is zero, so its null-model row is undefined.
class DegenerateFieldError : public std::runtime_error {
public:
    explicit DegenerateFieldError(std::size_t node)
        : std::runtime_error("degenerate field: superposed potential at node " +
                             std::to_string(node) + " is zero"),
          node_(node) {}

    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

}  // namespace distmod
