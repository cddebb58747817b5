#include <flagekr/errors.hpp>
#include <flagekr/solver.hpp>

#include "oracle/bridge.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace flagekr;

namespace {

auto build(int n, std::vector<int> type) -> FlagGraph
{
    return build_graph(GroundSize(n), TypeSet(std::move(type)));
}

}

TEST_CASE("independence number examples")
{
    CHECK(alpha_exact(build(5, {1, 3})).alpha == 12);
    CHECK(alpha_exact(build(6, {1, 4})).alpha == 22);
    CHECK(alpha_exact(build(5, {2})).alpha == 4);
    CHECK(alpha_exact(build(2, {1})).alpha == 1);
    CHECK(alpha_exact(build(6, {2})).alpha == 5);
}

TEST_CASE("witnesses are independent maximum sets and deterministic")
{
    auto g = build(6, {1, 4});
    auto r = alpha_exact(g);
    CHECK(r.exact);
    CHECK(r.upper == r.alpha);
    CHECK(r.witness.size() == r.alpha);
    CHECK(is_independent(r.witness, g));
    CHECK(is_maximal_independent(r.witness, g));
    SolveOptions par;
    par.workers = 3;
    auto p = alpha_exact(g, std::nullopt, par);
    CHECK(p.alpha == r.alpha);
    CHECK(p.witness == r.witness);
    auto hinted = alpha_exact(g, 20);
    CHECK(hinted.alpha == 22);
}

TEST_CASE("a too-high hint is rejected rather than trusted")
{
    auto g = build(5, {1, 3});
    for (std::size_t hint : {12u, 13u, 40u}) {
        auto r = alpha_exact(g, hint);
        CHECK(r.exact);
        CHECK(r.alpha == 12);
        CHECK(r.witness.size() == 12);
    }
}

TEST_CASE("is_independent / is_maximal_independent")
{
    auto g = build(2, {1});
    CHECK(is_independent(empty_set(g), g));
    std::vector<int> one{0}, both{0, 1};
    CHECK(is_independent(make_vertex_set(g, one), g));
    CHECK(is_maximal_independent(make_vertex_set(g, one), g));
    CHECK(! is_independent(make_vertex_set(g, both), g));
    CHECK_THROWS_AS(is_maximal_independent(make_vertex_set(g, both), g), ParameterError);
    CHECK(! is_maximal_independent(empty_set(g), g));
}

TEST_CASE("enumeration counts")
{
    CHECK(enumerate_maximum(build(2, {1}), 1).size() == 2);
    CHECK(enumerate_maximum(build(5, {2}), 4).size() == 5);
    CHECK(enumerate_maximum(build(5, {1, 3}), 12).size() == 45);
    CHECK(enumerate_maximum(build(6, {1, 4}), 22).size() == 270);
}

TEST_CASE("enumeration is sorted, duplicate-free and independent of worker count")
{
    auto g = build(6, {1, 4});
    auto seq = enumerate_maximum(g, 22);
    SolveOptions par;
    par.workers = 4;
    auto par_sets = enumerate_maximum(g, 22, par);
    REQUIRE(seq.size() == par_sets.size());
    for (std::size_t k = 0; k < seq.size(); ++k) {
        CHECK(seq[k] == par_sets[k]);
        CHECK(is_independent(seq[k], g));
        CHECK(seq[k].size() == 22);
        if (k)
            CHECK(lex_less(seq[k - 1].members, seq[k].members));
    }
}

TEST_CASE("budgets give intervals and partial counts, never wrong answers")
{
    auto g = build(7, {2, 4});
    SolveOptions tight;
    tight.node_budget = 50;
    auto r = alpha_exact(g, std::nullopt, tight);
    CHECK(! r.exact);
    CHECK(r.alpha <= 90);
    CHECK(r.upper >= 90);
    CHECK(is_independent(r.witness, g));
    CHECK(r.witness.size() == r.alpha);
    try {
        enumerate_maximum(g, 90, tight);
        FAIL("expected BudgetExceeded");
    }
    catch (const BudgetExceeded & e) {
        CHECK(e.partial_count() < 7175);
    }
}

TEST_CASE("clique numbers")
{
    CHECK(omega_exact(build(8, {2, 5})).alpha == 2);
    CHECK(omega_exact(build(2, {1})).alpha == 2);
    CHECK(omega_exact(build(5, {2})).alpha == 2);
    CHECK(omega_exact(build(4, {1})).alpha == 4);
    auto w = omega_exact(build(6, {2}));
    CHECK(w.alpha == 3);
    auto members = w.witness.members.members();
    auto g = build(6, {2});
    for (int u : members)
        for (int v : members)
            CHECK((u == v || g.adjacent(static_cast<std::size_t>(u), static_cast<std::size_t>(v))));
}

TEST_CASE("solver agrees with the exhaustive subset oracle on random induced subgraphs")
{
    std::vector<FlagGraph> hosts;
    hosts.push_back(build(5, {2}));
    hosts.push_back(build(5, {1, 3}));
    hosts.push_back(build(6, {1, 4}));
    hosts.push_back(build(7, {2, 4}));
    hosts.push_back(build(7, {3}));
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 120; ++trial) {
        const auto & host = hosts[static_cast<std::size_t>(trial) % hosts.size()];
        std::vector<int> all(host.vertex_count());
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        std::size_t k = std::min<std::size_t>(all.size(), 6 + rng() % 15);
        std::vector<int> chosen(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
        auto sub = host.dense().induced_subgraph(chosen);
        auto [alpha, count] = oracle::exhaustive_mis(oracle::induced_rows(host.dense(), chosen));
        auto r = maximum_independent_set(sub);
        CAPTURE(trial);
        CHECK(r.exact);
        CHECK(r.size == static_cast<std::size_t>(alpha));
        CHECK(is_independent(r.members, sub));
        CHECK(r.members.count() == r.size);
        std::uint64_t enumerated = enumerate_independent_sets(sub, r.size, [](const Bitset &) {});
        CHECK(enumerated == count);
    }
}

TEST_CASE("independence number is invariant under duality and at most half the vertices")
{
    for (int n = 2; n <= 6; ++n)
        for (const auto & type : all_types(GroundSize(n))) {
            auto g = build_graph(GroundSize(n), type);
            auto d = build_graph(GroundSize(n), dual_type(type, GroundSize(n)));
            auto a = alpha_exact(g).alpha;
            CAPTURE(n);
            CAPTURE(type.to_string());
            CHECK(a == alpha_exact(d).alpha);
            CHECK(2 * a <= g.vertex_count());
            CHECK((2 * a == g.vertex_count()) == is_bipartite(g).bipartite);
        }
}
