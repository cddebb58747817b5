#pragma once

#include <flagekr/families.hpp>
#include <flagekr/graph.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace flagekr {

enum class SymmetryMode { generators, full_automorphism };

auto to_string(SymmetryMode mode) -> std::string;
auto parse_symmetry_mode(const std::string & text) -> SymmetryMode;

/// The group acting on vertex sets: relabelings of [n], plus complementation
/// of every level when the type is self-dual.
struct SymmetryGroupSpec {
    int n = 0;
    bool include_duality = false;
    SymmetryMode mode = SymmetryMode::generators;

    static auto for_graph(const FlagGraph & g, SymmetryMode mode = SymmetryMode::generators) -> SymmetryGroupSpec;
    /// Throws ParameterError when n or include_duality do not fit g.
    void check(const FlagGraph & g) const;
};

/// Vertex map induced on g by relabeling element e (0-based) to perm[e],
/// followed by complementation when `dual`.
auto vertex_permutation(const FlagGraph & g, std::span<const int> perm, bool dual = false) -> std::vector<int>;

auto act(std::span<const int> perm, const VertexSet & set, const FlagGraph & g, bool dual = false) -> VertexSet;
auto act_vertices(std::span<const int> vertex_map, const VertexSet & set) -> VertexSet;

struct SymmetryOptions {
    /// Largest orbit materialised by classify in generator mode.
    std::size_t orbit_cap = 4'000'000;
    /// Node budget for each canonical labeling (0 = unlimited).
    std::uint64_t canonical_node_budget = 0;
};

auto are_equivalent(const VertexSet & s1, const VertexSet & s2, const FlagGraph & g, const SymmetryGroupSpec & spec,
    const SymmetryOptions & options = {}) -> bool;

struct EquivClass {
    /// Least member of the class orbit under lex_less.
    VertexSet representative;
    std::size_t orbit_size = 0;
    /// Input sets that fell into this class.
    std::size_t members_seen = 0;
    /// Histogram of in-set neighbour counts over outside vertices.
    NeighborProfile profile;
};

struct EquivClassReport {
    SymmetryMode mode = SymmetryMode::generators;
    std::size_t class_count = 0;
    std::size_t total = 0;
    /// Sorted by representative.
    std::vector<EquivClass> classes;
};

/// Partitions the sets into orbits. In full-automorphism mode the
/// generator orbits are merged further whenever their representatives have
/// equal canonical forms; orbit_size then adds up the merged orbits.
auto classify(std::span<const VertexSet> sets, const FlagGraph & g, const SymmetryGroupSpec & spec,
    const SymmetryOptions & options = {}) -> EquivClassReport;

/// Index of the class containing `set`, or -1.
auto find_class(const EquivClassReport & report, const VertexSet & set, const FlagGraph & g,
    const SymmetryGroupSpec & spec, const SymmetryOptions & options = {}) -> int;

}
