#include <flagekr/canonical.hpp>
#include <flagekr/errors.hpp>

#include <algorithm>
#include <numeric>

namespace flagekr {

namespace {

auto distinct(const std::vector<int> & colours) -> std::size_t
{
    std::vector<int> c(colours);
    std::sort(c.begin(), c.end());
    return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
}

class Canonizer {
public:
    Canonizer(const DenseGraph & g, std::span<const int> colours, std::uint64_t budget)
        : g_(g), initial_(colours.begin(), colours.end()), budget_(budget)
    {
        for (std::size_t v = 0; v < g.size(); ++v)
            neighbours_.push_back(g.neighbours(v));
    }

    auto run() -> CanonicalForm
    {
        std::vector<int> start = refine_colours(g_, initial_);
        std::vector<int> path;
        search(start, path);
        result_.nodes = nodes_;
        return std::move(result_);
    }

private:
    void search(const std::vector<int> & colours, std::vector<int> & path)
    {
        if (budget_ && ++nodes_ > budget_)
            throw BudgetExceeded("canonical labeling exceeded its node budget");
        if (! budget_)
            ++nodes_;

        // Target cell: lowest colour shared by more than one vertex.
        std::vector<int> size(g_.size() + 1, 0);
        for (int c : colours)
            ++size[static_cast<std::size_t>(c)];
        int target = -1;
        for (std::size_t c = 0; c < size.size(); ++c)
            if (size[c] > 1) {
                target = static_cast<int>(c);
                break;
            }
        if (target < 0) {
            leaf(colours);
            return;
        }

        std::vector<int> cell;
        for (std::size_t v = 0; v < colours.size(); ++v)
            if (colours[v] == target)
                cell.push_back(static_cast<int>(v));
        std::vector<int> explored;
        for (int w : cell) {
            if (pruned(w, explored, path))
                continue;
            explored.push_back(w);
            std::vector<int> next(colours.size());
            for (std::size_t u = 0; u < colours.size(); ++u)
                next[u] = 2 * colours[u] + 1;
            next[static_cast<std::size_t>(w)] = 2 * colours[static_cast<std::size_t>(w)];
            path.push_back(w);
            search(refine_colours(g_, std::move(next)), path);
            path.pop_back();
        }
    }

    /// Whether w lies in the orbit of an explored sibling under the known
    /// automorphisms fixing the current path pointwise.
    auto pruned(int w, const std::vector<int> & explored, const std::vector<int> & path) -> bool
    {
        if (explored.empty() || result_.automorphisms.empty())
            return false;
        std::vector<int> parent(g_.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x)
                x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            return x;
        };
        for (const auto & gamma : result_.automorphisms) {
            bool fixes = std::all_of(path.begin(), path.end(), [&](int p) { return gamma[static_cast<std::size_t>(p)] == p; });
            if (! fixes)
                continue;
            for (std::size_t v = 0; v < gamma.size(); ++v) {
                int a = find(static_cast<int>(v)), b = find(gamma[v]);
                if (a != b)
                    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
            }
        }
        int root = find(w);
        return std::any_of(explored.begin(), explored.end(), [&](int u) { return find(u) == root; });
    }

    void leaf(const std::vector<int> & labeling)
    {
        const std::size_t n = g_.size();
        std::vector<int> inverse(n);
        for (std::size_t v = 0; v < n; ++v)
            inverse[static_cast<std::size_t>(labeling[v])] = static_cast<int>(v);
        std::vector<std::uint32_t> cert;
        cert.reserve(2 * n);
        for (std::size_t pos = 0; pos < n; ++pos)
            cert.push_back(static_cast<std::uint32_t>(initial_[static_cast<std::size_t>(inverse[pos])]));
        std::vector<std::uint32_t> row;
        for (std::size_t pos = 0; pos < n; ++pos) {
            row.clear();
            for (int u : neighbours_[static_cast<std::size_t>(inverse[pos])])
                row.push_back(static_cast<std::uint32_t>(labeling[static_cast<std::size_t>(u)]));
            std::sort(row.begin(), row.end());
            cert.push_back(static_cast<std::uint32_t>(n + row.size()));
            cert.insert(cert.end(), row.begin(), row.end());
        }

        if (result_.labeling.empty() || cert < result_.certificate) {
            result_.certificate = std::move(cert);
            result_.labeling = labeling;
            return;
        }
        if (cert == result_.certificate) {
            // Same coloured graph through two labelings: their quotient is an automorphism.
            std::vector<int> best_inverse(n);
            for (std::size_t v = 0; v < n; ++v)
                best_inverse[static_cast<std::size_t>(result_.labeling[v])] = static_cast<int>(v);
            std::vector<int> gamma(n);
            for (std::size_t v = 0; v < n; ++v)
                gamma[v] = best_inverse[static_cast<std::size_t>(labeling[v])];
            result_.automorphisms.push_back(std::move(gamma));
        }
    }

    const DenseGraph & g_;
    std::vector<int> initial_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<std::vector<int>> neighbours_;
    CanonicalForm result_;
};

}

auto refine_colours(const DenseGraph & g, std::vector<int> colours) -> std::vector<int>
{
    const std::size_t n = g.size();
    std::vector<std::vector<int>> neighbours(n);
    for (std::size_t v = 0; v < n; ++v)
        neighbours[v] = g.neighbours(v);

    std::size_t count = 0;
    std::vector<std::vector<int>> signature(n);
    std::vector<int> order(n);
    while (true) {
        for (std::size_t v = 0; v < n; ++v) {
            auto & s = signature[v];
            s.assign(1, colours[v]);
            for (int u : neighbours[v])
                s.push_back(colours[static_cast<std::size_t>(u)]);
            std::sort(s.begin() + 1, s.end());
        }
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
            [&](int a, int b) { return signature[static_cast<std::size_t>(a)] < signature[static_cast<std::size_t>(b)]; });
        std::vector<int> next(n);
        int rank = -1;
        for (std::size_t k = 0; k < n; ++k) {
            auto v = static_cast<std::size_t>(order[k]);
            if (k == 0 || signature[v] != signature[static_cast<std::size_t>(order[k - 1])])
                rank = static_cast<int>(k);
            next[v] = rank;
        }
        std::size_t now = distinct(next);
        colours = std::move(next);
        if (now == count)
            return colours;
        count = now;
    }
}

auto canonical_form(const DenseGraph & g, std::span<const int> colours, std::uint64_t node_budget) -> CanonicalForm
{
    if (colours.size() != g.size())
        throw ParameterError("one colour per vertex required");
    return Canonizer(g, colours, node_budget).run();
}

}
