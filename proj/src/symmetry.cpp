#include <flagekr/canonical.hpp>
#include <flagekr/errors.hpp>
#include <flagekr/symmetry.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>

namespace flagekr {

namespace {

/// Same histogram as neighbor_profile, without the independence requirement.
auto profile_of(const VertexSet & set, const FlagGraph & g) -> NeighborProfile
{
    NeighborProfile profile;
    const auto & k = simd::kernels();
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (! set.contains(v))
            ++profile[k.and_popcount(g.dense().row(v), set.members.words())];
    return profile;
}

/// Index of the first level of f containing element e; depth when none does.
auto first_level(const Flag & f, int e) -> int
{
    for (std::size_t k = 0; k < f.levels.size(); ++k)
        if (f.levels[k] >> e & 1)
            return static_cast<int>(k);
    return static_cast<int>(f.levels.size());
}

auto mix(std::uint64_t h, int level) -> std::uint64_t
{
    h = (h ^ static_cast<std::uint64_t>(level + 1)) * 0x9E3779B97F4A7C15ull;
    h ^= h >> 31;
    return h * 0xBF58476D1CE4E5B9ull;
}

/// Backtracking over relabelings of [n] mapping `from` onto `to`. Element e
/// may only go to elements with the same incidence histogram, and after
/// fixing the images of elements 0..k-1 the multiset of flag words
/// restricted to those elements has to agree on both sides.
class PermutationSearch {
public:
    PermutationSearch(const VertexSet & from, const VertexSet & to, const FlagGraph & g) : g_(g), to_(to)
    {
        n_ = g.n();
        from.members.for_each([&](std::size_t v) { from_flags_.push_back(&g.flag(v)); });
        to.members.for_each([&](std::size_t v) { to_flags_.push_back(&g.flag(v)); });
        from_set_ = from;
    }

    auto run() -> bool
    {
        if (from_flags_.size() != to_flags_.size())
            return false;
        const int depth = static_cast<int>(g_.type().size());
        auto histogram = [&](const std::vector<const Flag *> & flags, int e) {
            std::vector<int> h(static_cast<std::size_t>(depth) + 1, 0);
            for (const Flag * f : flags)
                ++h[static_cast<std::size_t>(first_level(*f, e))];
            return h;
        };
        std::vector<std::vector<int>> from_hist, to_hist;
        for (int e = 0; e < n_; ++e) {
            from_hist.push_back(histogram(from_flags_, e));
            to_hist.push_back(histogram(to_flags_, e));
        }
        auto a = from_hist, b = to_hist;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            return false;
        candidates_.resize(static_cast<std::size_t>(n_));
        for (int e = 0; e < n_; ++e)
            for (int y = 0; y < n_; ++y)
                if (from_hist[static_cast<std::size_t>(e)] == to_hist[static_cast<std::size_t>(y)])
                    candidates_[static_cast<std::size_t>(e)].push_back(y);

        from_keys_.assign(static_cast<std::size_t>(n_) + 1, std::vector<std::uint64_t>(from_flags_.size(), 0));
        for (int e = 0; e < n_; ++e)
            for (std::size_t j = 0; j < from_flags_.size(); ++j)
                from_keys_[static_cast<std::size_t>(e) + 1][j] = mix(from_keys_[static_cast<std::size_t>(e)][j], first_level(*from_flags_[j], e));
        from_sorted_ = from_keys_;
        for (auto & keys : from_sorted_)
            std::sort(keys.begin(), keys.end());
        to_keys_.assign(static_cast<std::size_t>(n_) + 1, std::vector<std::uint64_t>(to_flags_.size(), 0));
        image_.assign(static_cast<std::size_t>(n_), -1);
        used_.assign(static_cast<std::size_t>(n_), 0);
        return extend(0);
    }

private:
    auto extend(int e) -> bool
    {
        if (e == n_)
            return act(image_, from_set_, g_) == to_;
        const auto k = static_cast<std::size_t>(e);
        std::vector<std::uint64_t> sorted;
        for (int y : candidates_[k]) {
            if (used_[static_cast<std::size_t>(y)])
                continue;
            for (std::size_t j = 0; j < to_flags_.size(); ++j)
                to_keys_[k + 1][j] = mix(to_keys_[k][j], first_level(*to_flags_[j], y));
            sorted = to_keys_[k + 1];
            std::sort(sorted.begin(), sorted.end());
            if (sorted != from_sorted_[k + 1])
                continue;
            image_[k] = y;
            used_[static_cast<std::size_t>(y)] = 1;
            if (extend(e + 1))
                return true;
            used_[static_cast<std::size_t>(y)] = 0;
        }
        image_[k] = -1;
        return false;
    }

    const FlagGraph & g_;
    const VertexSet & to_;
    VertexSet from_set_;
    int n_ = 0;
    std::vector<const Flag *> from_flags_, to_flags_;
    std::vector<std::vector<int>> candidates_;
    std::vector<std::vector<std::uint64_t>> from_keys_, from_sorted_, to_keys_;
    std::vector<int> image_;
    std::vector<char> used_;
};

auto membership_colours(const VertexSet & set) -> std::vector<int>
{
    std::vector<int> colours(set.members.size(), 0);
    set.members.for_each([&](std::size_t v) { colours[v] = 1; });
    return colours;
}

auto generators(const FlagGraph & g, const SymmetryGroupSpec & spec) -> std::vector<std::vector<int>>
{
    std::vector<std::vector<int>> result;
    const int n = g.n();
    std::vector<int> swap(static_cast<std::size_t>(n)), cycle(static_cast<std::size_t>(n));
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[0], swap[1]);
    for (int e = 0; e < n; ++e)
        cycle[static_cast<std::size_t>(e)] = (e + 1) % n;
    result.push_back(vertex_permutation(g, swap));
    if (n > 2)
        result.push_back(vertex_permutation(g, cycle));
    if (spec.include_duality) {
        std::vector<int> identity(static_cast<std::size_t>(n));
        std::iota(identity.begin(), identity.end(), 0);
        result.push_back(vertex_permutation(g, identity, true));
    }
    return result;
}

}

auto to_string(SymmetryMode mode) -> std::string
{
    return mode == SymmetryMode::generators ? "generators" : "full-automorphism";
}

auto parse_symmetry_mode(const std::string & text) -> SymmetryMode
{
    if (text == "generators")
        return SymmetryMode::generators;
    if (text == "full-automorphism" || text == "full")
        return SymmetryMode::full_automorphism;
    throw ParameterError("unknown symmetry mode '" + text + "'");
}

auto SymmetryGroupSpec::for_graph(const FlagGraph & g, SymmetryMode mode) -> SymmetryGroupSpec
{
    return SymmetryGroupSpec{g.n(), dual_type(g.type(), g.ground()) == g.type(), mode};
}

void SymmetryGroupSpec::check(const FlagGraph & g) const
{
    if (n != g.n())
        throw ParameterError("symmetry group acts on [" + std::to_string(n) + "], graph on [" + std::to_string(g.n()) + "]");
    if (include_duality != (dual_type(g.type(), g.ground()) == g.type()))
        throw ParameterError("duality belongs to the group exactly when the type is self-dual");
}

auto vertex_permutation(const FlagGraph & g, std::span<const int> perm, bool dual) -> std::vector<int>
{
    const int n = g.n();
    std::vector<char> hit(static_cast<std::size_t>(n), 0);
    if (perm.size() != static_cast<std::size_t>(n))
        throw ParameterError("permutation must have n entries");
    for (int x : perm) {
        if (x < 0 || x >= n || hit[static_cast<std::size_t>(x)])
            throw ParameterError("not a permutation of [n]");
        hit[static_cast<std::size_t>(x)] = 1;
    }
    if (dual && dual_type(g.type(), g.ground()) != g.type())
        throw ParameterError("complementation maps Gamma(n,T) to itself only for self-dual T");
    std::vector<int> image(g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        Flag f = g.flag(v);
        for (auto & level : f.levels)
            level = permute_mask(level, perm);
        if (dual)
            f = dual_flag(f, g.ground());
        image[v] = g.index_of(f);
        if (image[v] < 0)
            throw ConsistencyError("relabeled flag is not a vertex");
    }
    return image;
}

auto act_vertices(std::span<const int> vertex_map, const VertexSet & set) -> VertexSet
{
    VertexSet result{set.graph_id, Bitset(set.members.size())};
    set.members.for_each([&](std::size_t v) { result.members.set(static_cast<std::size_t>(vertex_map[v])); });
    return result;
}

auto act(std::span<const int> perm, const VertexSet & set, const FlagGraph & g, bool dual) -> VertexSet
{
    check_belongs(set, g);
    return act_vertices(vertex_permutation(g, perm, dual), set);
}

auto are_equivalent(const VertexSet & s1, const VertexSet & s2, const FlagGraph & g, const SymmetryGroupSpec & spec,
    const SymmetryOptions & options) -> bool
{
    check_belongs(s1, g);
    check_belongs(s2, g);
    spec.check(g);
    if (s1.size() != s2.size())
        return false;
    if (s1 == s2)
        return true;
    if (profile_of(s1, g) != profile_of(s2, g))
        return false;

    if (spec.mode == SymmetryMode::full_automorphism) {
        auto c1 = canonical_form(g.dense(), membership_colours(s1), options.canonical_node_budget);
        auto c2 = canonical_form(g.dense(), membership_colours(s2), options.canonical_node_budget);
        return c1.certificate == c2.certificate;
    }
    if (PermutationSearch(s1, s2, g).run())
        return true;
    if (spec.include_duality) {
        std::vector<int> identity(static_cast<std::size_t>(g.n()));
        std::iota(identity.begin(), identity.end(), 0);
        VertexSet d = act(identity, s1, g, true);
        return PermutationSearch(d, s2, g).run();
    }
    return false;
}

auto classify(std::span<const VertexSet> sets, const FlagGraph & g, const SymmetryGroupSpec & spec,
    const SymmetryOptions & options) -> EquivClassReport
{
    spec.check(g);
    const auto gens = generators(g, spec);

    std::unordered_map<Bitset, std::size_t, BitsetHash> seen;
    std::vector<EquivClass> classes;
    for (const VertexSet & set : sets) {
        check_belongs(set, g);
        if (auto it = seen.find(set.members); it != seen.end()) {
            ++classes[it->second].members_seen;
            continue;
        }
        const std::size_t id = classes.size();
        EquivClass c;
        c.representative = set;
        c.members_seen = 1;
        std::deque<Bitset> queue{set.members};
        seen.emplace(set.members, id);
        while (! queue.empty()) {
            Bitset current = std::move(queue.front());
            queue.pop_front();
            ++c.orbit_size;
            if (lex_less(current, c.representative.members))
                c.representative.members = current;
            for (const auto & gen : gens) {
                Bitset image(current.size());
                current.for_each([&](std::size_t v) { image.set(static_cast<std::size_t>(gen[v])); });
                if (seen.emplace(image, id).second) {
                    if (seen.size() > options.orbit_cap)
                        throw ResourceError("orbit storage exceeds the cap of " + std::to_string(options.orbit_cap) + " sets");
                    queue.push_back(std::move(image));
                }
            }
        }
        classes.push_back(std::move(c));
    }

    if (spec.mode == SymmetryMode::full_automorphism && classes.size() > 1) {
        std::map<std::vector<std::uint32_t>, std::size_t> by_form;
        std::vector<EquivClass> merged;
        for (auto & c : classes) {
            auto form = canonical_form(g.dense(), membership_colours(c.representative), options.canonical_node_budget);
            auto [it, fresh] = by_form.emplace(std::move(form.certificate), merged.size());
            if (fresh) {
                merged.push_back(std::move(c));
                continue;
            }
            EquivClass & into = merged[it->second];
            into.orbit_size += c.orbit_size;
            into.members_seen += c.members_seen;
            if (lex_less(c.representative.members, into.representative.members))
                into.representative = c.representative;
        }
        classes = std::move(merged);
    }

    for (auto & c : classes)
        c.profile = profile_of(c.representative, g);
    std::sort(classes.begin(), classes.end(), [](const EquivClass & a, const EquivClass & b) {
        return lex_less(a.representative.members, b.representative.members);
    });

    EquivClassReport report;
    report.mode = spec.mode;
    report.class_count = classes.size();
    report.total = sets.size();
    report.classes = std::move(classes);
    return report;
}

auto find_class(const EquivClassReport & report, const VertexSet & set, const FlagGraph & g,
    const SymmetryGroupSpec & spec, const SymmetryOptions & options) -> int
{
    for (std::size_t k = 0; k < report.classes.size(); ++k)
        if (are_equivalent(report.classes[k].representative, set, g, spec, options))
            return static_cast<int>(k);
    return -1;
}

}
