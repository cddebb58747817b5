#include <flagekr/dense_graph.hpp>

namespace flagekr {

DenseGraph::DenseGraph(std::size_t vertices) :
    size_(vertices),
    words_((vertices + 63) / 64),
    rows_(size_ * words_, 0)
{
}

void DenseGraph::add_edge(std::size_t u, std::size_t v)
{
    row(u)[v / 64] |= Word{1} << (v % 64);
    row(v)[u / 64] |= Word{1} << (u % 64);
}

auto DenseGraph::degree(std::size_t v) const -> std::size_t
{
    return simd::kernels().popcount(row(v));
}

auto DenseGraph::edge_count() const -> std::size_t
{
    std::size_t twice = 0;
    for (std::size_t v = 0; v < size_; ++v)
        twice += degree(v);
    return twice / 2;
}

auto DenseGraph::neighbours(std::size_t v) const -> std::vector<int>
{
    std::vector<int> result;
    auto r = row(v);
    for (std::size_t w = 0; w < words_; ++w)
        for (Word cur = r[w]; cur; cur &= cur - 1)
            result.push_back(static_cast<int>(w * 64 + std::countr_zero(cur)));
    return result;
}

auto DenseGraph::complement() const -> DenseGraph
{
    DenseGraph result(size_);
    for (std::size_t u = 0; u < size_; ++u)
        for (std::size_t v = u + 1; v < size_; ++v)
            if (! adjacent(u, v))
                result.add_edge(u, v);
    return result;
}

auto DenseGraph::induced_subgraph(std::span<const int> vertices) const -> DenseGraph
{
    DenseGraph result(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (adjacent(static_cast<std::size_t>(vertices[i]), static_cast<std::size_t>(vertices[j])))
                result.add_edge(i, j);
    return result;
}

auto DenseGraph::is_simple_undirected() const -> bool
{
    for (std::size_t u = 0; u < size_; ++u) {
        if (adjacent(u, u))
            return false;
        for (std::size_t v = u + 1; v < size_; ++v)
            if (adjacent(u, v) != adjacent(v, u))
                return false;
    }
    return true;
}

}
