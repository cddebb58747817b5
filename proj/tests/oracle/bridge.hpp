#pragma once

#include "oracle.hpp"

#include <flagekr/core.hpp>
#include <flagekr/dense_graph.hpp>

namespace oracle {

inline auto to_chain(const flagekr::Flag & f) -> Chain
{
    Chain c;
    for (auto m : f.levels) {
        Subset s;
        for (int e = 0; e < 64; ++e)
            if ((m >> e) & 1)
                s.insert(e + 1);
        c.push_back(s);
    }
    return c;
}

inline auto to_mask(const Subset & s) -> flagekr::Mask
{
    flagekr::Mask m = 0;
    for (int e : s)
        m |= flagekr::Mask{1} << (e - 1);
    return m;
}

inline auto to_flag(const Chain & c) -> flagekr::Flag
{
    flagekr::Flag f;
    for (const auto & s : c)
        f.levels.push_back(to_mask(s));
    return f;
}

/// Adjacency of the subgraph induced on `vertices`, as 32-bit rows.
inline auto induced_rows(const flagekr::DenseGraph & g, const std::vector<int> & vertices) -> std::vector<std::uint32_t>
{
    std::vector<std::uint32_t> rows(vertices.size(), 0);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = 0; j < vertices.size(); ++j)
            if (i != j && g.adjacent(static_cast<std::size_t>(vertices[i]), static_cast<std::size_t>(vertices[j])))
                rows[i] |= std::uint32_t{1} << j;
    return rows;
}

}
