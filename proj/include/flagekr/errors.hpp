#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace flagekr {

/// Invalid arguments: malformed type sets, violated preconditions, mismatched graphs.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured resource cap (vertex count, memory) would be exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A node or wall-clock budget ran out before an exact answer was reached.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string & what, std::uint64_t partial_count = 0)
        : std::runtime_error(what), partial_count_(partial_count)
    {
    }

    auto partial_count() const -> std::uint64_t { return partial_count_; }

private:
    std::uint64_t partial_count_;
};

/// Two computations that must agree did not.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Eigensolver failure.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}
