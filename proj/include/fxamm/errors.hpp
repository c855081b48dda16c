#pragma once

#include <stdexcept>
#include <string>

namespace fxamm {

// Requested redemption would consume the full balance of a pool side.
struct LiquidityError : std::runtime_error {
    explicit LiquidityError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative solver failed to reach its tolerance within the iteration budget.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input data; message carries the offending line number where known.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fxamm
