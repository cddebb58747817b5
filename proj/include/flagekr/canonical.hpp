#pragma once

#include <flagekr/dense_graph.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace flagekr {

/// Canonical form of a vertex-coloured graph: two coloured graphs are
/// isomorphic (colour classes mapped to equal colours) iff their
/// certificates are equal.
struct CanonicalForm {
    std::vector<std::uint32_t> certificate;
    /// labeling[v] = canonical position of vertex v.
    std::vector<int> labeling;
    /// Automorphisms of the coloured graph met during the search, as vertex maps.
    std::vector<std::vector<int>> automorphisms;
    std::uint64_t nodes = 0;
};

/// Iterated colour refinement with individualisation and backtracking over
/// the first non-singleton cell, pruned by the automorphisms found so far.
/// `node_budget` 0 means unlimited; throws BudgetExceeded otherwise.
auto canonical_form(const DenseGraph & g, std::span<const int> colours, std::uint64_t node_budget = 0)
    -> CanonicalForm;

/// Coarsest equitable refinement of `colours`, renumbered by rank of the
/// (colour, sorted neighbour colours) signature. Isomorphism-invariant.
auto refine_colours(const DenseGraph & g, std::vector<int> colours) -> std::vector<int>;

}
