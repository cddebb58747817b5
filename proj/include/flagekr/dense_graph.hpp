#pragma once

#include <flagekr/bitset.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace flagekr {

/// Simple undirected graph stored as one adjacency bit-row per vertex.
class DenseGraph {
public:
    using Word = Bitset::Word;

    DenseGraph() = default;
    explicit DenseGraph(std::size_t vertices);

    auto size() const -> std::size_t { return size_; }
    auto words_per_row() const -> std::size_t { return words_; }

    auto row(std::size_t v) const -> std::span<const Word> { return {rows_.data() + v * words_, words_}; }
    auto row(std::size_t v) -> std::span<Word> { return {rows_.data() + v * words_, words_}; }

    auto adjacent(std::size_t u, std::size_t v) const -> bool { return (row(u)[v / 64] >> (v % 64)) & 1; }
    void add_edge(std::size_t u, std::size_t v);

    auto degree(std::size_t v) const -> std::size_t;
    auto edge_count() const -> std::size_t;
    auto neighbours(std::size_t v) const -> std::vector<int>;

    auto complement() const -> DenseGraph;
    auto induced_subgraph(std::span<const int> vertices) const -> DenseGraph;

    /// Checks symmetry and the absence of loops.
    auto is_simple_undirected() const -> bool;

private:
    std::size_t size_ = 0;
    std::size_t words_ = 0;
    std::vector<Word> rows_;
};

}
