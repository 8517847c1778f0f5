#pragma once

#include <stdexcept>
#include <string>

namespace qnl {

// Input outside an operation's domain (negative argument, empty interval, ...).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A norm or modular integral is infinite for the given function/space pair.
// Callers (ratio functionals, searches) reject these candidates instead of
// propagating infinities.
struct divergence_error : std::runtime_error {
    explicit divergence_error(const std::string& what) : std::runtime_error(what) {}
};

// A piecewise-algebra result falls outside the supported expression class
// (term cap exceeded, multiple interior critical points).
struct unsupported_combination_error : std::runtime_error {
    explicit unsupported_combination_error(const std::string& what) : std::runtime_error(what) {}
};

// A supremum search had no valid candidate at all.
struct search_failure_error : std::runtime_error {
    explicit search_failure_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed literal, config file or CLI argument.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qnl
