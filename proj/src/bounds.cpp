#include <flagekr/bounds.hpp>
#include <flagekr/errors.hpp>
#include <flagekr/families.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace flagekr {

namespace {

auto make(std::string name, Direction direction) -> BoundReport
{
    BoundReport r;
    r.name = std::move(name);
    r.direction = direction;
    return r;
}

auto refuse(BoundReport r, std::string reason) -> BoundReport
{
    r.applicable = false;
    r.reason = std::move(reason);
    r.value.reset();
    return r;
}

auto accept(BoundReport r, BigInt value, std::string reason = {}) -> BoundReport
{
    r.applicable = true;
    r.reason = std::move(reason);
    r.value = std::move(value);
    return r;
}

auto real_string(double x) -> std::string
{
    std::ostringstream out;
    out << std::setprecision(12) << x;
    return out.str();
}

auto args(std::initializer_list<int> values) -> std::string
{
    std::string s = "(";
    for (int v : values)
        s += (s.size() > 1 ? "," : "") + std::to_string(v);
    return s + ")";
}

auto join(std::span<const int> values) -> std::string
{
    std::string s = "{";
    for (std::size_t k = 0; k < values.size(); ++k)
        s += (k ? "," : "") + std::to_string(values[k]);
    return s + "}";
}

}

auto to_string(Direction d) -> std::string
{
    switch (d) {
    case Direction::upper: return "upper";
    case Direction::lower: return "lower";
    case Direction::exact: return "exact";
    }
    return "?";
}

auto to_string(VerdictStatus s) -> std::string
{
    switch (s) {
    case VerdictStatus::exact: return "exact";
    case VerdictStatus::interval: return "interval";
    case VerdictStatus::unknown: return "unknown";
    }
    return "?";
}

auto ekr_value(GroundSize n, const TypeSet & type) -> BoundReport
{
    type.check_against(n);
    BoundReport r = make("ekr_value", Direction::exact);
    const int t = type.max();
    if (2 * t > n.value())
        return refuse(r, "max(T)=" + std::to_string(t) + " exceeds n/2");
    auto rest = type_difference(type, TypeSet({t}));
    BigInt chains = count_chains(t, rest);
    r.support["C(n-1,t-1)"] = to_string(binomial(n.value() - 1, t - 1));
    r.support["flags_of_rest_in_[t]"] = to_string(chains);
    return accept(r, binomial(n.value() - 1, t - 1) * chains);
}

auto bipartite_value(GroundSize n, const TypeSet & type) -> BoundReport
{
    type.check_against(n);
    BoundReport r = make("bipartite_value", Direction::exact);
    for (int i : type.entries())
        if (type.contains(n.value() - i)) {
            r.support["pair"] = args({i, n.value() - i});
            return accept(r, count_flags(n, type) / 2);
        }
    return refuse(r, "no i,j in T with i+j=n");
}

auto half_bound(GroundSize n, const TypeSet & type) -> BoundReport
{
    type.check_against(n);
    BoundReport r = make("half_bound", Direction::upper);
    BigInt count = count_flags(n, type);
    r.support["vertices"] = to_string(count);
    r.support["tight"] = bipartite_value(n, type).applicable ? "true" : "unknown";
    return accept(r, count / 2);
}

auto half_bound(const FlagGraph & g) -> BoundReport
{
    BoundReport r = make("half_bound", Direction::upper);
    bool bipartite = is_bipartite(g).bipartite;
    r.support["vertices"] = std::to_string(g.vertex_count());
    r.support["bipartite"] = bipartite ? "true" : "false";
    r.support["tight"] = bipartite ? "true" : "false";
    return accept(r, BigInt(g.vertex_count() / 2));
}

auto cycle_value(int n, int a, int b) -> BoundReport
{
    BoundReport r = make("cycle_value", Direction::exact);
    r.support["params"] = args({n, a, b});
    if (a < 1 || a >= b || b >= n)
        return refuse(r, "needs 1 <= a < b < n");
    if (! (n < 2 * b))
        return refuse(r, "n < 2b fails: " + std::to_string(n) + " >= " + std::to_string(2 * b));
    if (! (a + 3 * b <= 2 * n))
        return refuse(r, "a+3b <= 2n fails: " + std::to_string(a + 3 * b) + " > " + std::to_string(2 * n));
    return accept(r, binomial(n - 1, b) * binomial(b, a));
}

auto cycle_corollary_value(int n, int a, int b, const std::vector<int> & extra) -> BoundReport
{
    BoundReport base = cycle_value(n, a, b);
    BoundReport r = make("cycle_corollary_value", Direction::exact);
    r.support = base.support;
    r.support["extra"] = join(extra);
    for (std::size_t k = 0; k < extra.size(); ++k)
        if (extra[k] < 1 || extra[k] >= a || (k && extra[k] <= extra[k - 1]))
            return refuse(r, "extra levels must form a subset of [a-1]");
    if (! base.applicable)
        return refuse(r, base.reason);
    BigInt chains = count_chains(a, extra);
    r.support["flags_of_extra_in_[a]"] = to_string(chains);
    return accept(r, *base.value * chains);
}

auto theorem_1nm2_value(int n) -> BoundReport
{
    BoundReport r = make("theorem_1nm2_value", Direction::exact);
    r.support["type"] = args({1, n - 2});
    if (n < 5)
        return refuse(r, "needs n >= 5");
    return accept(r, binomial(n, 3) + 2);
}

auto projection_lower(GroundSize n, const TypeSet & type, const TypeSet & sub, const BigInt & alpha_sub) -> BoundReport
{
    type.check_against(n);
    BoundReport r = make("projection_lower", Direction::lower);
    r.support["S"] = sub.to_string();
    if (! sub.is_subset_of(type))
        throw ParameterError("projection needs S subset of T: " + sub.to_string() + " vs " + type.to_string());
    BigInt top = count_flags(n, type);
    BigInt bottom = count_flags(n, sub);
    if (top % bottom != 0)
        throw ConsistencyError("preimage counts are not uniform");
    r.support["alpha_S"] = to_string(alpha_sub);
    r.support["preimages"] = to_string(top / bottom);
    return accept(r, alpha_sub * (top / bottom));
}

auto projection_exact(GroundSize n, const TypeSet & type, const TypeSet & sub, const BigInt & alpha_sub) -> BoundReport
{
    type.check_against(n);
    BoundReport r = make("projection_exact", Direction::exact);
    r.support["S"] = sub.to_string();
    if (! sub.is_subset_of(type))
        throw ParameterError("projection needs S subset of T: " + sub.to_string() + " vs " + type.to_string());
    if (sub == type)
        return refuse(r, "S must differ from T");
    if (sub.min() + sub.max() > n.value())
        return refuse(r, "min(S)+max(S) <= n fails");
    auto rest = type_difference(type, sub);
    if (rest.back() >= sub.min())
        return refuse(r, "max(T\\S) < min(S) fails");
    BigInt preimages = count_chains(sub.min(), rest);
    r.support["alpha_S"] = to_string(alpha_sub);
    r.support["preimages"] = to_string(preimages);
    return accept(r, alpha_sub * preimages);
}

auto deletion_bound(int n, int a, int b, const BigInt & alpha_smaller) -> BoundReport
{
    BoundReport r = make("deletion_bound", Direction::upper);
    r.support["params"] = args({n, a, b});
    r.support["alpha_smaller"] = to_string(alpha_smaller);
    if (a < 1 || a >= b)
        return refuse(r, "needs 1 <= a < b");
    return accept(r, BigInt(n) * alpha_smaller / (b - a));
}

auto hoffman(const DenseGraph & g, const Spectrum & spectrum) -> BoundReport
{
    BoundReport r = make("hoffman", Direction::upper);
    if (g.size() == 0 || spectrum.values.empty())
        return refuse(r, "empty graph");
    const double d = static_cast<double>(g.degree(0));
    const double lambda = spectrum.smallest();
    r.support["lambda_min"] = real_string(lambda);
    r.support["degree"] = real_string(d);
    r.support["residual"] = real_string(spectrum.residual);
    if (d - lambda <= 0)
        return refuse(r, "graph has no edges");
    double x = static_cast<double>(g.size()) * (-lambda) / (d - lambda);
    GuardedFloor f = guarded_floor(x);
    r.real_value = x;
    r.alternative_value = f.other;
    return accept(r, f.value, f.other ? "value within 1e-6 of an integer; both floors reported" : "");
}

auto hoffman(const FlagGraph & g) -> BoundReport
{
    return hoffman(g.dense(), adjacency_spectrum(g.dense()));
}

auto inertia_bound(const Spectrum & spectrum) -> BoundReport
{
    BoundReport r = make("inertia_bound", Direction::upper);
    InertiaCounts c = inertia(spectrum);
    r.support["positive"] = std::to_string(c.positive);
    r.support["zero"] = std::to_string(c.zero);
    r.support["negative"] = std::to_string(c.negative);
    return accept(r, BigInt(std::min(c.positive + c.zero, c.negative + c.zero)));
}

auto inertia_bound(const FlagGraph & g) -> BoundReport
{
    return inertia_bound(adjacency_spectrum(g.dense()));
}

auto clique_coclique(const FlagGraph & g, std::size_t omega) -> BoundReport
{
    BoundReport r = make("clique_coclique", Direction::upper);
    r.support["omega"] = std::to_string(omega);
    if (omega == 0)
        return refuse(r, "clique size must be positive");
    return accept(r, BigInt(g.vertex_count() / omega));
}

auto induction_condition(int n, int a, int b) -> bool
{
    if (a < 1 || n < a + b + 1 || ! (2 * a < n && n < 2 * b))
        throw ParameterError("induction condition needs n >= a+b+1 and a < n/2 < b");
    return BigInt(n) >= recurrence_term(n, a, b) + 3 * a + 1;
}

namespace {

class Dispatcher {
public:
    explicit Dispatcher(const DispatchOptions & options) : options_(options) {}

    auto solve(int n, const TypeSet & type, bool top) -> AlphaVerdict
    {
        auto key = std::pair{n, type};
        if (! top)
            if (auto it = memo_.find(key); it != memo_.end())
                return it->second;
        AlphaVerdict v = compute(GroundSize(n), type, top);
        if (! top)
            memo_.emplace(key, v);
        return v;
    }

private:
    auto settle(AlphaVerdict & v, BoundReport r, const std::string & step, std::vector<std::string> chain = {}) -> bool
    {
        bool ok = r.applicable;
        if (ok) {
            v.status = VerdictStatus::exact;
            v.lo = v.hi = *r.value;
            v.provenance.push_back(step);
            for (auto & c : chain)
                v.provenance.push_back(std::move(c));
        }
        v.reports.push_back(std::move(r));
        return ok;
    }

    auto compute(GroundSize n, const TypeSet & type, bool top) -> AlphaVerdict
    {
        type.check_against(n);
        const int nv = n.value();
        const TypeSet dual = dual_type(type, n);
        const bool self_dual = dual == type;
        AlphaVerdict v;

        if (settle(v, bipartite_value(n, type), "bipartite_value(" + type.to_string() + ")"))
            return v;
        if (settle(v, ekr_value(n, type), "ekr_value(" + type.to_string() + ")"))
            return v;
        if (! self_dual && settle(v, ekr_value(n, dual), "ekr_value on dual type " + dual.to_string()))
            return v;
        if (try_projection(v, n, type, type))
            return v;
        if (! self_dual && try_projection(v, n, dual, type))
            return v;

        for (const TypeSet * t : {&type, &dual}) {
            if (t == &dual && self_dual)
                break;
            std::string via = t == &dual ? " on dual type " + dual.to_string() : "";
            auto e = t->entries();
            if (e.size() == 2) {
                if (settle(v, cycle_value(nv, e[0], e[1]), "cycle_value" + args({nv, e[0], e[1]}) + via))
                    return v;
            }
            else if (e.size() > 2) {
                std::vector<int> extra(e.begin(), e.end() - 2);
                int a = e[e.size() - 2], b = e.back();
                if (settle(v, cycle_corollary_value(nv, a, b, extra),
                        "cycle_corollary_value" + args({nv, a, b}) + " with " + join(extra) + via))
                    return v;
            }
            if (*t == TypeSet({1, nv - 2}) && nv >= 4) {
                if (settle(v, theorem_1nm2_value(nv), "theorem_1nm2_value(" + std::to_string(nv) + ")" + via))
                    return v;
            }
        }

        interval(v, n, type, dual, top);
        return v;
    }

    /// Exact projection onto a sub-type of `t` (t is T or its dual).
    auto try_projection(AlphaVerdict & v, GroundSize n, const TypeSet & t, const TypeSet & original) -> bool
    {
        auto entries = t.entries();
        const std::size_t k = entries.size();
        std::string via = t == original ? "" : " on dual type " + t.to_string();
        for (std::uint32_t bits = 1; bits + 1 < (1u << k); ++bits) {
            std::vector<int> chosen;
            for (std::size_t j = 0; j < k; ++j)
                if (bits >> j & 1)
                    chosen.push_back(entries[j]);
            TypeSet sub(chosen);
            if (! projection_exact(n, t, sub, 0).applicable)
                continue;
            AlphaVerdict inner = solve(n.value(), sub, false);
            if (inner.status != VerdictStatus::exact)
                continue;
            return settle(v, projection_exact(n, t, sub, inner.lo), "projection_exact onto " + sub.to_string() + via,
                inner.provenance);
        }
        return false;
    }

    void interval(AlphaVerdict & v, GroundSize n, const TypeSet & type, const TypeSet & dual, bool top)
    {
        const int nv = n.value();
        std::vector<std::pair<BigInt, std::string>> lows{{BigInt(1), "single vertex"}};
        std::vector<std::pair<BigInt, std::string>> highs;
        auto note = [&](BoundReport r, const std::string & label) {
            if (r.applicable) {
                if (r.direction == Direction::lower)
                    lows.emplace_back(*r.value, label);
                else
                    highs.emplace_back(*r.value, label);
            }
            v.reports.push_back(std::move(r));
        };

        if (type.size() == 2) {
            for (const TypeSet * t : {&type, &dual}) {
                int a = (*t)[0], b = (*t)[1];
                if (a + b < nv && 2 * a < nv && nv < 2 * b) {
                    BoundReport r = make("family_lower", Direction::lower);
                    auto s = optimal_shift(nv, a, b);
                    r.support["params"] = args({nv, a, b});
                    r.support["i_star"] = std::to_string(s.i_star);
                    note(accept(r, s.total), "family_lower f" + args({nv, a, b}));
                    break;
                }
            }
        }

        auto entries = type.entries();
        for (std::uint32_t bits = 1; bits + 1 < (1u << type.size()); ++bits) {
            std::vector<int> chosen;
            for (std::size_t j = 0; j < type.size(); ++j)
                if (bits >> j & 1)
                    chosen.push_back(entries[j]);
            TypeSet sub(chosen);
            AlphaVerdict inner = solve(nv, sub, false);
            note(projection_lower(n, type, sub, inner.lo), "projection_lower onto " + sub.to_string());
        }

        note(half_bound(n, type), "half_bound");
        if (type.size() == 2) {
            for (const TypeSet * t : {&type, &dual}) {
                int a = (*t)[0], b = (*t)[1];
                if (b - 1 > a) {
                    AlphaVerdict smaller = solve(nv - 1, TypeSet({a, b - 1}), false);
                    note(deletion_bound(nv, a, b, smaller.hi),
                        "deletion_bound" + args({nv, a, b}) + " with alpha" + args({nv - 1, a, b - 1}) + " <= "
                            + to_string(smaller.hi));
                }
                if (dual == type)
                    break;
            }
        }

        std::optional<FlagGraph> graph;
        if (nv <= options_.graph_ground_cap && count_flags(n, type) <= options_.graph_vertex_cap) {
            GraphOptions go;
            go.vertex_cap = options_.graph_vertex_cap;
            go.ground_cap = options_.graph_ground_cap;
            go.workers = options_.solve.workers;
            graph.emplace(build_graph(n, type, go));
        }
        if (graph && options_.spectral && graph->vertex_count() <= options_.spectral_vertex_cap) {
            Spectrum spectrum = adjacency_spectrum(graph->dense(), options_.eigen_tolerance);
            note(hoffman(graph->dense(), spectrum), "hoffman");
            note(inertia_bound(spectrum), "inertia_bound");
        }
        if (graph) {
            SolveOptions so;
            so.node_budget = options_.omega_node_budget;
            MisResult clique = clique_number(graph->dense(), so);
            BoundReport r = clique_coclique(*graph, clique.size);
            r.support["omega_exact"] = clique.exact ? "true" : "false";
            note(r, "clique_coclique");
        }

        auto lo = std::max_element(lows.begin(), lows.end(), [](auto & x, auto & y) { return x.first < y.first; });
        auto hi = std::min_element(highs.begin(), highs.end(), [](auto & x, auto & y) { return x.first < y.first; });
        v.lo = lo->first;
        v.hi = hi->first;
        if (v.lo > v.hi)
            throw ConsistencyError("lower bound " + to_string(v.lo) + " exceeds upper bound " + to_string(v.hi) + " for Gamma("
                + std::to_string(nv) + "," + type.to_string() + ")");
        v.status = v.lo == v.hi ? VerdictStatus::exact : VerdictStatus::interval;
        v.provenance.push_back("lower: " + lo->second);
        v.provenance.push_back("upper: " + hi->second);

        if (top && options_.use_solver && graph && v.status != VerdictStatus::exact) {
            SolveResult s = alpha_exact(*graph, static_cast<std::size_t>(to_int64(v.lo)), options_.solve);
            BigInt found(s.alpha), upper(s.upper);
            if (found > v.hi || upper < v.lo)
                throw ConsistencyError("solver result contradicts the bound interval for Gamma(" + std::to_string(nv) + ","
                    + type.to_string() + ")");
            v.lo = std::max(v.lo, found);
            v.hi = std::min(v.hi, upper);
            if (s.exact) {
                v.status = VerdictStatus::exact;
                v.provenance.insert(v.provenance.begin(), "solver: alpha_exact");
            }
            else
                v.provenance.push_back("solver: budget exhausted, interval [" + std::to_string(s.alpha) + ","
                    + std::to_string(s.upper) + "]");
        }
    }

    const DispatchOptions & options_;
    std::map<std::pair<int, TypeSet>, AlphaVerdict> memo_;
};

}

auto alpha_dispatch(GroundSize n, const TypeSet & type, const DispatchOptions & options) -> AlphaVerdict
{
    Dispatcher d(options);
    return d.solve(n.value(), type, true);
}

}
