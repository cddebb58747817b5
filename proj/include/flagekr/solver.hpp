#pragma once

#include <flagekr/bitset.hpp>
#include <flagekr/dense_graph.hpp>
#include <flagekr/graph.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace flagekr {

struct SolveOptions {
    /// 0 means unlimited.
    std::uint64_t node_budget = 0;
    /// 0 means unlimited.
    double time_budget_seconds = 0;
    unsigned workers = 1;
};

/// Result on a plain DenseGraph. When a budget stops the search early,
/// exact is false and [size, upper] brackets the independence number.
struct MisResult {
    std::size_t size = 0;
    std::size_t upper = 0;
    bool exact = true;
    Bitset members;
    std::uint64_t nodes = 0;
    std::chrono::duration<double> elapsed{};
};

auto is_independent(const Bitset & set, const DenseGraph & g) -> bool;

/// Branch and bound on the complement-clique formulation: greedy clique
/// partition of the candidates, sharpened by unit propagation over the
/// partition classes, branching in reverse class order.
auto maximum_independent_set(const DenseGraph & g, std::optional<std::size_t> lower_hint = {},
    const SolveOptions & options = {}) -> MisResult;

/// Every independent set with exactly `size` members, each once, delivered in
/// lex_less order after the search completes. Returns the count; throws
/// BudgetExceeded carrying the partial count.
auto enumerate_independent_sets(const DenseGraph & g, std::size_t size,
    const std::function<void(const Bitset &)> & sink, const SolveOptions & options = {}) -> std::uint64_t;

struct SolveResult {
    std::size_t alpha = 0;
    std::size_t upper = 0;
    bool exact = true;
    VertexSet witness;
    std::uint64_t nodes_explored = 0;
    std::chrono::duration<double> elapsed{};
};

auto is_independent(const VertexSet & set, const FlagGraph & g) -> bool;
/// Throws ParameterError when `set` is not independent.
auto is_maximal_independent(const VertexSet & set, const FlagGraph & g) -> bool;

auto alpha_exact(const FlagGraph & g, std::optional<std::size_t> lower_hint = {}, const SolveOptions & options = {})
    -> SolveResult;

auto enumerate_maximum(const FlagGraph & g, std::size_t alpha, const std::function<void(const VertexSet &)> & sink,
    const SolveOptions & options = {}) -> std::uint64_t;
auto enumerate_maximum(const FlagGraph & g, std::size_t alpha, const SolveOptions & options = {})
    -> std::vector<VertexSet>;

/// Clique number; the witness is a clique.
auto omega_exact(const FlagGraph & g, const SolveOptions & options = {}) -> SolveResult;
auto clique_number(const DenseGraph & g, const SolveOptions & options = {}) -> MisResult;

}
