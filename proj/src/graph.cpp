#include <flagekr/graph.hpp>
#include <flagekr/errors.hpp>
#include <flagekr/simd/kernels.hpp>

#include <algorithm>
#include <deque>
#include <ostream>
#include <thread>

namespace flagekr {

auto graph_id(GroundSize n, const TypeSet & type) -> std::uint64_t
{
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t x) {
        h ^= x;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(n.value()));
    for (int t : type.entries())
        mix(static_cast<std::uint64_t>(t) + 0x100);
    return h;
}

auto FlagGraph::index_of(const Flag & f) const -> int
{
    auto it = index_.find(f);
    return it == index_.end() ? -1 : it->second;
}

auto build_graph(GroundSize n, const TypeSet & type, const GraphOptions & options) -> FlagGraph
{
    type.check_against(n);
    if (n.value() > std::min(options.ground_cap, 32))
        throw ResourceError("n=" + std::to_string(n.value()) + " exceeds the graph ground-size cap "
            + std::to_string(std::min(options.ground_cap, 32)));
    BigInt count = count_flags(n, type);
    if (count > options.vertex_cap)
        throw ResourceError("Gamma(" + std::to_string(n.value()) + "," + type.to_string() + ") has " + count.str()
            + " vertices, above the vertex cap " + std::to_string(options.vertex_cap));

    FlagGraph g(n, type);
    g.id_ = graph_id(n, type);
    g.flags_ = enumerate_flags(n, type);
    const std::size_t size = g.flags_.size();
    const std::size_t depth = type.size();
    g.index_.reserve(size);
    for (std::size_t v = 0; v < size; ++v)
        g.index_.emplace(g.flags_[v], static_cast<int>(v));

    std::vector<std::uint32_t> levels(depth * size);
    for (std::size_t v = 0; v < size; ++v)
        for (std::size_t j = 0; j < depth; ++j)
            levels[j * size + v] = static_cast<std::uint32_t>(g.flags_[v].levels[j]);

    g.adjacency_ = DenseGraph(size);
    const auto full = static_cast<std::uint32_t>(n.full_mask());
    const auto & k = simd::kernels();
    auto fill_rows = [&](std::size_t begin, std::size_t end) {
        std::vector<std::uint32_t> probe(depth);
        for (std::size_t u = begin; u < end; ++u) {
            for (std::size_t j = 0; j < depth; ++j)
                probe[j] = levels[j * size + u];
            k.general_position_row(probe, levels, depth, size, full, g.adjacency_.row(u));
        }
    };

    unsigned workers = std::max(1u, options.workers);
    if (workers == 1 || size < 256)
        fill_rows(0, size);
    else {
        std::vector<std::jthread> pool;
        std::size_t chunk = (size + workers - 1) / workers;
        for (std::size_t begin = 0; begin < size; begin += chunk)
            pool.emplace_back(fill_rows, begin, std::min(size, begin + chunk));
    }

    if (! g.adjacency_.is_simple_undirected())
        throw ConsistencyError("adjacency of Gamma(" + std::to_string(n.value()) + "," + type.to_string() + ") is not symmetric");
    g.neighbours_.resize(size);
    for (std::size_t v = 0; v < size; ++v)
        g.neighbours_[v] = g.adjacency_.neighbours(v);
    g.degree_ = size ? g.neighbours_[0].size() : 0;
    for (std::size_t v = 0; v < size; ++v)
        if (g.neighbours_[v].size() != g.degree_)
            throw ConsistencyError("Gamma(" + std::to_string(n.value()) + "," + type.to_string() + ") is not regular");
    return g;
}

auto empty_set(const FlagGraph & g) -> VertexSet
{
    return VertexSet{g.id(), Bitset(g.vertex_count())};
}

auto make_vertex_set(const FlagGraph & g, std::span<const int> members) -> VertexSet
{
    VertexSet result = empty_set(g);
    for (int v : members) {
        if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count())
            throw ParameterError("vertex index " + std::to_string(v) + " out of range");
        result.members.set(static_cast<std::size_t>(v));
    }
    return result;
}

void check_belongs(const VertexSet & set, const FlagGraph & g)
{
    if (set.graph_id != g.id() || set.members.size() != g.vertex_count())
        throw ParameterError("vertex set does not belong to Gamma(" + std::to_string(g.n()) + "," + g.type().to_string() + ")");
}

auto is_bipartite(const DenseGraph & g) -> Bipartition
{
    std::vector<int> side(g.size(), -1);
    for (std::size_t start = 0; start < g.size(); ++start) {
        if (side[start] != -1)
            continue;
        side[start] = 0;
        std::deque<std::size_t> queue{start};
        while (! queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (int v : g.neighbours(u)) {
                if (side[static_cast<std::size_t>(v)] == -1) {
                    side[static_cast<std::size_t>(v)] = 1 - side[u];
                    queue.push_back(static_cast<std::size_t>(v));
                }
                else if (side[static_cast<std::size_t>(v)] == side[u])
                    return Bipartition{};
            }
        }
    }
    return Bipartition{true, std::move(side)};
}

auto is_bipartite(const FlagGraph & g) -> Bipartition
{
    return is_bipartite(g.dense());
}

auto components(const DenseGraph & g) -> std::vector<std::vector<int>>
{
    std::vector<std::vector<int>> result;
    std::vector<char> seen(g.size(), 0);
    for (std::size_t start = 0; start < g.size(); ++start) {
        if (seen[start])
            continue;
        std::vector<int> component{static_cast<int>(start)};
        seen[start] = 1;
        for (std::size_t i = 0; i < component.size(); ++i)
            for (int v : g.neighbours(static_cast<std::size_t>(component[i])))
                if (! seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    component.push_back(v);
                }
        std::sort(component.begin(), component.end());
        result.push_back(std::move(component));
    }
    return result;
}

auto components(const FlagGraph & g) -> std::vector<std::vector<int>>
{
    return components(g.dense());
}

auto is_complete_bipartite(const DenseGraph & g, std::span<const int> component) -> bool
{
    DenseGraph sub = g.induced_subgraph(component);
    auto parts = is_bipartite(sub);
    if (! parts.bipartite)
        return false;
    for (std::size_t u = 0; u < sub.size(); ++u)
        for (std::size_t v = u + 1; v < sub.size(); ++v)
            if ((parts.side[u] != parts.side[v]) != sub.adjacent(u, v))
                return false;
    return true;
}

auto verify_duality_isomorphism(GroundSize n, const TypeSet & type, const GraphOptions & options) -> bool
{
    FlagGraph g = build_graph(n, type, options);
    FlagGraph h = build_graph(n, dual_type(type, n), options);
    if (g.vertex_count() != h.vertex_count())
        return false;
    std::vector<int> image(g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        image[v] = h.index_of(dual_flag(g.flag(v), n));
        if (image[v] < 0)
            return false;
    }
    std::vector<char> hit(h.vertex_count(), 0);
    for (int w : image) {
        if (hit[static_cast<std::size_t>(w)])
            return false;
        hit[static_cast<std::size_t>(w)] = 1;
    }
    for (std::size_t u = 0; u < g.vertex_count(); ++u)
        for (std::size_t v = u + 1; v < g.vertex_count(); ++v)
            if (g.adjacent(u, v) != h.adjacent(static_cast<std::size_t>(image[u]), static_cast<std::size_t>(image[v])))
                return false;
    return true;
}

void write_edge_list(const FlagGraph & g, std::ostream & out)
{
    out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (std::size_t u = 0; u < g.vertex_count(); ++u)
        for (int v : g.neighbours(u))
            if (static_cast<std::size_t>(v) > u)
                out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

}
