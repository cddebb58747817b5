#pragma once

#include <flagekr/bitset.hpp>
#include <flagekr/core.hpp>
#include <flagekr/dense_graph.hpp>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

namespace flagekr {

struct GraphOptions {
    std::size_t vertex_cap = 100'000;
    /// Largest n for which a graph is materialized (at most 32).
    int ground_cap = 16;
    unsigned workers = 1;
};

/// Gamma(n, T): flags of type T, adjacent when in general position.
///
/// Vertex v is the v-th flag of enumerate_flags(n, T). Immutable once built.
class FlagGraph {
public:
    auto ground() const -> GroundSize { return n_; }
    auto n() const -> int { return n_.value(); }
    auto type() const -> const TypeSet & { return type_; }
    auto id() const -> std::uint64_t { return id_; }

    auto vertex_count() const -> std::size_t { return flags_.size(); }
    auto flag(std::size_t v) const -> const Flag & { return flags_[v]; }
    auto flags() const -> std::span<const Flag> { return flags_; }
    /// -1 when f is not a vertex.
    auto index_of(const Flag & f) const -> int;

    auto dense() const -> const DenseGraph & { return adjacency_; }
    auto adjacent(std::size_t u, std::size_t v) const -> bool { return adjacency_.adjacent(u, v); }
    auto neighbours(std::size_t v) const -> std::span<const int> { return neighbours_[v]; }
    auto degree() const -> std::size_t { return degree_; }
    auto edge_count() const -> std::size_t { return vertex_count() * degree_ / 2; }

private:
    friend auto build_graph(GroundSize, const TypeSet &, const GraphOptions &) -> FlagGraph;

    FlagGraph(GroundSize n, TypeSet type) : n_(n), type_(std::move(type)) {}

    GroundSize n_;
    TypeSet type_;
    std::uint64_t id_ = 0;
    std::vector<Flag> flags_;
    std::unordered_map<Flag, int, FlagHash> index_;
    DenseGraph adjacency_;
    std::vector<std::vector<int>> neighbours_;
    std::size_t degree_ = 0;
};

/// Stable identifier of Gamma(n, T), independent of how it was built.
auto graph_id(GroundSize n, const TypeSet & type) -> std::uint64_t;

/// Throws ResourceError naming the cap when the graph would be too large,
/// ConsistencyError if the result is not simple and regular.
auto build_graph(GroundSize n, const TypeSet & type, const GraphOptions & options = {}) -> FlagGraph;

/// A subset of the vertices of one particular graph.
struct VertexSet {
    std::uint64_t graph_id = 0;
    Bitset members;

    auto size() const -> std::size_t { return members.count(); }
    auto contains(std::size_t v) const -> bool { return members.test(v); }

    friend auto operator==(const VertexSet &, const VertexSet &) -> bool = default;
};

auto empty_set(const FlagGraph & g) -> VertexSet;
auto make_vertex_set(const FlagGraph & g, std::span<const int> members) -> VertexSet;
/// Throws ParameterError if `set` was built for another graph or has the wrong width.
void check_belongs(const VertexSet & set, const FlagGraph & g);

struct Bipartition {
    bool bipartite = false;
    /// Colour 0/1 per vertex when bipartite, otherwise empty.
    std::vector<int> side;
};

auto is_bipartite(const DenseGraph & g) -> Bipartition;
auto is_bipartite(const FlagGraph & g) -> Bipartition;

/// Connected components, each sorted, ordered by smallest vertex.
auto components(const DenseGraph & g) -> std::vector<std::vector<int>>;
auto components(const FlagGraph & g) -> std::vector<std::vector<int>>;

auto is_complete_bipartite(const DenseGraph & g, std::span<const int> component) -> bool;

/// Builds Gamma(n, T) and Gamma(n, omega_n(T)) and checks that complementing
/// every level maps edges to edges and non-edges to non-edges.
auto verify_duality_isomorphism(GroundSize n, const TypeSet & type, const GraphOptions & options = {}) -> bool;

/// "p edge |V| |E|" then one "e u v" line per edge, 1-based.
void write_edge_list(const FlagGraph & g, std::ostream & out);

}
