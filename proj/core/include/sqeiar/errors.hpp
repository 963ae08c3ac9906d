#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sqeiar {

/// Raised when a caller violates an operation's precondition (bad bounds,
/// mismatched grids, unstable step sizes).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when explicit time stepping produces a non-finite value.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, std::size_t step, std::size_t node)
        : std::runtime_error(what + " (first bad value at step " + std::to_string(step) +
                             ", node " + std::to_string(node) + ")"),
          step_(step),
          node_(node) {}

    std::size_t step() const noexcept { return step_; }
    std::size_t node() const noexcept { return node_; }

private:
    std::size_t step_;
    std::size_t node_;
};

/// Raised by the configuration loader; the message carries the key path.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sqeiar
