#pragma once

#include <stdexcept>
#include <string>

namespace nilbal {

// Precondition violated by the caller (negative radius, nonpositive step, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An iterative method gave up. `last_residual` is the best value reached.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_residual)
        : std::runtime_error(what), last_residual_(last_residual) {}

    double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

// A root bracket did not contain a sign change.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nilbal
