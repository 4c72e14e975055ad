#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace campus {

// An optimisation problem with no feasible solution.
class infeasible_error : public std::runtime_error {
public:
    explicit infeasible_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical procedure that cannot produce a trustworthy result
// (e.g. a rank-deficient least-squares system with the fallback disabled).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input data; carries the 1-based line number of the offending row.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, std::size_t line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

} // namespace campus
