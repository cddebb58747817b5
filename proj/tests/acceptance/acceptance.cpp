// One line per acceptance criterion: PASS, FAIL or SKIP.
//
//   acceptance [--stretch] [--stretch-seconds S] [--workers W]
//
// Criterion 10 runs only with --stretch.

#include <flagekr/bounds.hpp>
#include <flagekr/errors.hpp>
#include <flagekr/families.hpp>
#include <flagekr/solver.hpp>
#include <flagekr/spectral.hpp>
#include <flagekr/symmetry.hpp>

#include "oracle/bridge.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace flagekr;

namespace {

constexpr double sweep_limit_seconds = 300;
constexpr double alpha_limit_seconds[] = {1, 60, 1800};
constexpr double classify_limit_seconds = 7200;
constexpr double family_limit_seconds = 60;
constexpr double lemma_limit_seconds = 10;
constexpr double spectrum_limit_seconds = 120;
constexpr double recurrence_limit_seconds = 10;
constexpr double induction_limit_seconds = 1;
constexpr double lambda_tolerance = 1e-6;
constexpr double zero_tolerance = 1e-7;
constexpr int random_subgraphs = 200;
constexpr std::size_t max_subgraph_vertices = 24;
constexpr int projection_samples = 1000;
constexpr std::uint64_t class_node_budget = 3'000'000;

using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string & what)
    {
        if (! ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void report(int id, const std::string & title, const std::function<void(Verdict &)> & body, double limit)
{
    Verdict v;
    auto start = Clock::now();
    try {
        body(v);
    }
    catch (const std::exception & e) {
        v.pass = false;
        v.detail << " [exception: " << e.what() << "]";
    }
    double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    if (elapsed > limit) {
        v.pass = false;
        v.detail << " [over the " << limit << " s limit]";
    }
    failures += ! v.pass;
    char time_text[64];
    std::snprintf(time_text, sizeof time_text, "%.2f s", elapsed);
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << ":" << v.detail.str() << " ("
              << time_text << ", limit " << limit << " s)" << std::endl;
}

auto graph(int n, std::vector<int> type, unsigned workers = 1) -> FlagGraph
{
    GraphOptions options;
    options.workers = workers;
    return build_graph(GroundSize(n), TypeSet(std::move(type)), options);
}

auto family(const FlagGraph & g, int i, bool barred = false) -> VertexSet
{
    return build_family(FamilySpec{g.n(), g.type()[0], g.type()[1], i, barred}, g);
}

template <typename F>
void for_each_triple(int max_n, F && f)
{
    for (int n = 3; n <= max_n; ++n)
        for (int a = 1; 2 * a < n; ++a)
            for (int b = n / 2 + 1; a + b < n; ++b)
                f(n, a, b);
}

/// Classes of all maximum sets; the families listed must fall into distinct classes.
void check_classes(Verdict & v, const FlagGraph & g, std::size_t alpha, std::size_t expected_classes,
    const std::vector<std::pair<std::string, VertexSet>> & families, const SolveOptions & options)
{
    auto sets = enumerate_maximum(g, alpha, options);
    auto spec = SymmetryGroupSpec::for_graph(g);
    auto report = classify(sets, g, spec);
    v.detail << " Gamma(" << g.n() << "," << g.type().to_string() << "): " << sets.size() << " maximum sets, "
             << report.class_count << " classes";
    v.require(report.class_count == expected_classes, "expected " + std::to_string(expected_classes) + " classes");
    std::set<int> seen;
    for (const auto & [name, set] : families) {
        v.require(set.size() == alpha, name + " is not maximum");
        int k = find_class(report, set, g, spec);
        v.require(k >= 0, name + " not found among the classes");
        v.require(seen.insert(k).second, name + " shares a class with another family");
    }
    v.detail << ";";
}

}

int main(int argc, char ** argv)
{
    bool stretch = false;
    double stretch_seconds = 4 * 3600;
    unsigned workers = 1;
    for (int k = 1; k < argc; ++k) {
        if (! std::strcmp(argv[k], "--stretch"))
            stretch = true;
        else if (! std::strcmp(argv[k], "--stretch-seconds") && k + 1 < argc)
            stretch_seconds = std::stod(argv[++k]);
        else if (! std::strcmp(argv[k], "--workers") && k + 1 < argc)
            workers = static_cast<unsigned>(std::stoul(argv[++k]));
        else {
            std::cerr << "usage: acceptance [--stretch] [--stretch-seconds S] [--workers W]\n";
            return 2;
        }
    }
    SolveOptions solve;
    solve.workers = workers;

    report(1, "dispatch settles every type with n <= 6 and the solver agrees", [&](Verdict & v) {
        int types = 0;
        for (int n = 2; n <= 6; ++n)
            for (const auto & type : all_types(GroundSize(n))) {
                ++types;
                auto d = alpha_dispatch(GroundSize(n), type);
                auto s = alpha_exact(build_graph(GroundSize(n), type), std::nullopt, solve);
                std::string name = "(" + std::to_string(n) + "," + type.to_string() + ")";
                v.require(d.status == VerdictStatus::exact, name + " not settled");
                v.require(s.exact && BigInt(s.alpha) == d.lo, name + " solver disagrees");
            }
        v.detail << " " << types << " types, all exact and confirmed";
    }, sweep_limit_seconds);

    struct AlphaCase {
        int n;
        std::vector<int> type;
        BoundReport theorem;
        std::size_t expected;
    };
    std::vector<AlphaCase> alpha_cases{
        {5, {1, 3}, cycle_value(5, 1, 3), 12},
        {6, {1, 4}, theorem_1nm2_value(6), 22},
        {7, {2, 4}, cycle_value(7, 2, 4), 90},
    };
    for (std::size_t k = 0; k < alpha_cases.size(); ++k) {
        const auto & c = alpha_cases[k];
        report(2, "solver alpha(Gamma(" + std::to_string(c.n) + "," + TypeSet(c.type).to_string() + "))",
            [&](Verdict & v) {
                auto r = alpha_exact(graph(c.n, c.type, workers), std::nullopt, solve);
                v.detail << " alpha = " << r.alpha << ", " << c.theorem.name << " = "
                         << (c.theorem.value ? to_string(*c.theorem.value) : "n/a");
                v.require(r.exact, "not exact");
                v.require(r.alpha == c.expected, "wrong value");
                v.require(c.theorem.applicable && *c.theorem.value == BigInt(r.alpha), "theorem value differs");
            },
            alpha_limit_seconds[k]);
    }

    report(3, "classes of maximum independent sets", [&](Verdict & v) {
        for (int n : {5, 6}) {
            auto g = graph(n, {1, n - 2}, workers);
            auto alpha = alpha_exact(g, std::nullopt, solve).alpha;
            check_classes(v, g, alpha, 3,
                {{"F_" + std::to_string(n - 5), family(g, n - 5)}, {"F_" + std::to_string(n - 4), family(g, n - 4)},
                    {"Fbar_" + std::to_string(n - 3), family(g, n - 3, true)}},
                solve);
        }
        auto g = graph(7, {2, 4}, workers);
        check_classes(v, g, 90, 14, {{"F_0", family(g, 0)}, {"F_1", family(g, 1)}, {"Fbar_2", family(g, 2, true)}},
            solve);
    }, classify_limit_seconds);

    report(4, "family sizes for every valid (n,a,b,i) with n <= 10", [&](Verdict & v) {
        int specs = 0;
        for_each_triple(10, [&](int n, int a, int b) {
            auto g = graph(n, {a, b}, workers);
            for (int i = 0; i <= 2 * b - n + 1; ++i) {
                ++specs;
                std::string name = "(" + std::to_string(n) + "," + std::to_string(a) + "," + std::to_string(b) + ","
                    + std::to_string(i) + ")";
                std::size_t counted = 0;
                for (std::size_t u = 0; u < g.vertex_count(); ++u) {
                    auto c = oracle::to_chain(g.flag(u));
                    counted += oracle::in_family(n, i, false, c[0], c[1]);
                }
                auto built = family(g, i);
                v.require(BigInt(built.size()) == family_size(n, a, b, i), name + " build vs formula");
                v.require(counted == built.size(), name + " oracle count vs build");
                v.require(family_size_alternative(n, a, b, i) == family_size(n, a, b, i), name + " alternative form");
            }
        });
        v.detail << " " << specs << " specs: enumeration = formula = alternative form";
    }, family_limit_seconds);

    report(5, "Gamma(8,{2,5}): F_1 and the interval [230,240]", [&](Verdict & v) {
        auto g = graph(8, {2, 5}, workers);
        auto f = family(g, 1);
        bool independent = is_independent(f, g);
        v.require(f.size() == 230, "|F_1| != 230");
        v.require(independent, "F_1 not independent");
        v.require(independent && is_maximal_independent(f, g), "F_1 not maximal");
        auto d = deletion_bound(8, 2, 5, 90);
        v.require(d.value && *d.value == 240, "deletion bound != 240");
        auto verdict = alpha_dispatch(GroundSize(8), TypeSet({2, 5}));
        v.require(verdict.status == VerdictStatus::interval && verdict.lo == 230 && verdict.hi == 240,
            "dispatch interval differs");
        v.detail << " |F_1| = " << f.size() << ", deletion = " << (d.value ? to_string(*d.value) : "n/a")
                 << ", dispatch [" << to_string(verdict.lo) << "," << to_string(verdict.hi) << "]";
    }, lemma_limit_seconds);

    report(6, "Hoffman and inertia on Gamma(8,{2,5})", [&](Verdict & v) {
        auto g = graph(8, {2, 5}, workers);
        auto s = adjacency_spectrum(g.dense());
        const double expected = -1.5 * (1 + std::sqrt(17.0));
        double error = std::abs(s.smallest() - expected);
        auto h = hoffman(g.dense(), s);
        auto counts = inertia(s, zero_tolerance);
        char text[160];
        std::snprintf(text, sizeof text, " lambda_min = %.9f (|error| = %.1e), Hoffman = %s, +%zu/0:%zu/-%zu", s.smallest(),
            error, h.value ? to_string(*h.value).c_str() : "n/a", counts.positive, counts.zero, counts.negative);
        v.detail << text;
        v.require(error <= lambda_tolerance, "lambda_min off by more than 1e-6");
        v.require(h.value && *h.value == 257, "Hoffman value != 257");
        v.require(counts.positive == counts.negative, "positive and negative counts differ");
    }, spectrum_limit_seconds);

    report(7, "both recurrence identities for n <= 40", [&](Verdict & v) {
        int applicable = 0, excluded = 0, excluded_failing = 0;
        for_each_triple(40, [&](int n, int a, int b) {
            try {
                check_family_parameters(n - 1, a, b - 1);
            }
            catch (const ParameterError &) {
                return;
            }
            auto r = recurrence_values(n, a, b);
            if (recurrence_applicable(n, a, b)) {
                ++applicable;
                v.require(r.first_holds() && r.second_holds(),
                    "(" + std::to_string(n) + "," + std::to_string(a) + "," + std::to_string(b) + ")");
            }
            else {
                ++excluded;
                excluded_failing += ! r.first_holds();
            }
        });
        v.detail << " " << applicable << " triples with optimal shift >= 1 all satisfy both; " << excluded
                 << " triples with optimal shift 0 are outside the identities' derivation (" << excluded_failing
                 << " of them violate the first identity)";
        v.require(applicable > 0, "nothing checked");
    }, recurrence_limit_seconds);

    report(8, "induction thresholds and the n = 36 values", [&](Verdict & v) {
        int first_a1 = 0, first_a2 = 0;
        bool monotone = true;
        for (int n = 5; n <= 60; ++n) {
            bool c = induction_condition(n, 1, n - 2);
            if (c && ! first_a1)
                first_a1 = n;
            monotone = monotone && (c == (first_a1 && n >= first_a1));
        }
        for (int n = 7; n <= 64; ++n) {
            bool c = induction_condition(n, 2, n - 3);
            if (c && ! first_a2)
                first_a2 = n;
            monotone = monotone && (c == (first_a2 && n >= first_a2));
        }
        auto f = f_max(36, 1, 33);
        auto count = count_flags(GroundSize(36), TypeSet({1, 33}));
        v.detail << " a=1: from n=" << first_a1 << ", a=2: from n=" << first_a2 << ", f(36,1,33) = " << to_string(f)
                 << ", |V| = " << to_string(count);
        v.require(first_a1 == 10 && first_a2 == 37 && monotone, "thresholds");
        v.require(f == 58947, "f(36,1,33)");
        v.require(count == 235620, "vertex count");
    }, induction_limit_seconds);

    report(9, "property suites", [&](Verdict & v) {
        std::mt19937_64 rng(20240);

        // (i) random induced subgraphs against the exhaustive oracle
        std::vector<FlagGraph> hosts;
        for (auto [n, type] : std::vector<std::pair<int, std::vector<int>>>{
                 {5, {2}}, {5, {1, 3}}, {6, {1, 4}}, {7, {2, 4}}, {8, {2, 5}}, {6, {2}}, {7, {3}}})
            hosts.push_back(graph(n, type));
        int agreed = 0;
        for (int t = 0; t < random_subgraphs; ++t) {
            const auto & host = hosts[rng() % hosts.size()];
            std::vector<int> all(host.vertex_count());
            std::iota(all.begin(), all.end(), 0);
            std::shuffle(all.begin(), all.end(), rng);
            std::size_t k = std::min(all.size(), 4 + static_cast<std::size_t>(rng() % (max_subgraph_vertices - 3)));
            std::vector<int> chosen(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
            auto sub = host.dense().induced_subgraph(chosen);
            auto [alpha, count] = oracle::exhaustive_mis(oracle::induced_rows(host.dense(), chosen));
            auto r = maximum_independent_set(sub, std::nullopt, solve);
            bool ok = r.exact && r.size == static_cast<std::size_t>(alpha) && is_independent(r.members, sub)
                && enumerate_independent_sets(sub, r.size, [](const Bitset &) {}, solve) == count;
            agreed += ok;
        }
        v.detail << " (i) " << agreed << "/" << random_subgraphs << " subgraphs agree;";
        v.require(agreed == random_subgraphs, "(i)");

        // (ii) duality
        int alpha_pairs = 0, class_pairs = 0, class_skipped = 0;
        SolveOptions budgeted = solve;
        budgeted.node_budget = class_node_budget;
        auto class_count = [&](const FlagGraph & g, std::size_t alpha) -> std::optional<std::size_t> {
            try {
                auto sets = enumerate_maximum(g, alpha, budgeted);
                return classify(sets, g, SymmetryGroupSpec::for_graph(g)).class_count;
            }
            catch (const BudgetExceeded &) {
                return std::nullopt;
            }
        };
        for (int n = 2; n <= 6; ++n)
            for (const auto & type : all_types(GroundSize(n))) {
                TypeSet dual = dual_type(type, GroundSize(n));
                if (dual < type)
                    continue;
                auto g = build_graph(GroundSize(n), type);
                auto h = build_graph(GroundSize(n), dual);
                auto a = alpha_exact(g, std::nullopt, solve).alpha;
                auto b = alpha_exact(h, std::nullopt, solve).alpha;
                ++alpha_pairs;
                v.require(a == b, "(ii) alpha differs for " + type.to_string());
                auto cg = class_count(g, a);
                auto ch = cg ? class_count(h, b) : std::nullopt;
                if (cg && ch) {
                    ++class_pairs;
                    v.require(*cg == *ch, "(ii) class count differs for " + type.to_string());
                }
                else
                    ++class_skipped;
            }
        v.detail << " (ii) alpha equal on " << alpha_pairs << " dual pairs, class counts equal on " << class_pairs
                 << " (" << class_skipped << " pairs have too many maximum sets to enumerate within "
                 << class_node_budget << " nodes);";

        // (iii) projection is a homomorphism
        std::vector<std::tuple<int, TypeSet, TypeSet>> triples;
        for (int n = 3; n <= 7; ++n)
            for (const auto & t : all_types(GroundSize(n)))
                for (const auto & s : all_types(GroundSize(n)))
                    if (t.size() > 1 && s.is_subset_of(t) && s != t)
                        triples.emplace_back(n, t, s);
        int edges = 0;
        while (edges < projection_samples) {
            auto & [n, t, s] = triples[rng() % triples.size()];
            auto flags = enumerate_flags(GroundSize(n), t);
            const auto & x = flags[rng() % flags.size()];
            // pick a random neighbour of x by rejection
            for (int tries = 0; tries < 200; ++tries) {
                const auto & y = flags[rng() % flags.size()];
                if (! in_general_position(x, y, GroundSize(n)))
                    continue;
                ++edges;
                v.require(in_general_position(project_flag(x, t, s), project_flag(y, t, s), GroundSize(n)),
                    "(iii) projection of an edge is not an edge");
                break;
            }
        }
        v.detail << " (iii) " << edges << " sampled edges project to edges;";

        // (iv) maximality of the families
        int maximal = 0, top = 0;
        for_each_triple(9, [&](int n, int a, int b) {
            auto g = graph(n, {a, b}, workers);
            for (int i = 0; i <= 2 * b - n; ++i) {
                ++maximal;
                v.require(is_maximal_independent(family(g, i), g), "(iv) F_i not maximal");
            }
            ++top;
            v.require(! is_maximal_independent(family(g, 2 * b - n + 1), g), "(iv) top shift unexpectedly maximal");
        });
        v.detail << " (iv) " << maximal << " families maximal, " << top << " top-shift families not maximal";
    }, 3600);

    if (! stretch)
        std::cout << "SKIP criterion 10: stretch runs for Gamma(9,{1,6}) and Gamma(9,{1,7}) (pass --stretch)" << std::endl;
    else {
        SolveOptions timed = solve;
        timed.time_budget_seconds = stretch_seconds / 2;
        report(10, "stretch: alpha(Gamma(9,{1,6})) = 168", [&](Verdict & v) {
            auto g = graph(9, {1, 6}, workers);
            auto r = alpha_exact(g, 168, timed);
            v.detail << (r.exact ? " alpha = " + std::to_string(r.alpha)
                                 : " budget reached, interval [" + std::to_string(r.alpha) + ","
                                     + std::to_string(r.upper) + "]");
            v.require(r.exact && r.alpha == 168, "not established");
        }, stretch_seconds);
        report(10, "stretch: alpha(Gamma(9,{1,7})) = 86 with 3 classes", [&](Verdict & v) {
            auto g = graph(9, {1, 7}, workers);
            auto r = alpha_exact(g, 86, timed);
            v.detail << (r.exact ? " alpha = " + std::to_string(r.alpha)
                                 : " budget reached, interval [" + std::to_string(r.alpha) + ","
                                     + std::to_string(r.upper) + "]");
            v.require(r.exact && r.alpha == 86, "alpha not established");
            if (r.exact && r.alpha == 86)
                check_classes(v, g, 86, 3, {{"F_4", family(g, 4)}, {"F_5", family(g, 5)}, {"Fbar_6", family(g, 6, true)}},
                    timed);
        }, stretch_seconds);
    }

    std::cout << (failures ? "FAILED: " + std::to_string(failures) + " criteria" : std::string("all criteria passed"))
              << std::endl;
    return failures ? 1 : 0;
}
