#pragma once

#include <stdexcept>
#include <string>

namespace degenflow {

/// Invalid argument to a pointwise law or evaluator (e.g. negative w).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

/// Inconsistent run or parameter configuration. CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure (non-convergence, step underflow, ...). CLI exit code 3.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace degenflow
